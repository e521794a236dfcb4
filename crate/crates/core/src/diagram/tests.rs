use super::*;
use crate::sample;
use proptest::prelude::*;
use rand::Rng;
use std::sync::Arc;

/// One wire sort, a crossing, a cap/cup pair, a dot, and a marker used
/// by the matching oracle.
fn wire_sig() -> Arc<Signature> {
    let mut b = SignatureBuilder::new();
    let pt = b.zero("*").unwrap();
    let w = b.one("w", pt, pt).unwrap();
    let mk = |b: &SignatureBuilder, letters: Vec<OneId>| {
        Word::new(b.current(), letters, pt).unwrap()
    };
    let ww = mk(&b, vec![w, w]);
    let e = Word::identity(pt);
    b.two("cross", ww.clone(), ww.clone()).unwrap();
    b.two("cap", ww.clone(), e.clone()).unwrap();
    b.two("cup", e.clone(), ww.clone()).unwrap();
    b.two("dot", mk(&b, vec![w]), mk(&b, vec![w])).unwrap();
    b.two("mark", ww.clone(), ww).unwrap();
    Arc::new(b.finish())
}

fn gen(sig: &Arc<Signature>, name: &str) -> Diagram {
    Diagram::generator(sig, sig.two(name).unwrap())
}

fn idw(sig: &Arc<Signature>, n: usize) -> Diagram {
    let w = sig.one("w").unwrap();
    let pt = sig.zero("*").unwrap();
    Diagram::identity(sig, Word::new(sig, vec![w; n], pt).unwrap())
}

#[test]
fn compose0_identities() {
    let sig = wire_sig();
    let a = idw(&sig, 1);
    let c = a.compose0(&a).unwrap();
    assert_eq!(c, idw(&sig, 2));
    assert_eq!(c.slices().len(), 0);
}

#[test]
fn compose0_whiskering() {
    let sig = wire_sig();
    let c = gen(&sig, "cross").compose0(&idw(&sig, 1)).unwrap();
    assert_eq!(c.slices().len(), 1);
    assert_eq!(c.slices()[0].offset, 0);
    assert_eq!(c.source().len(), 3);
}

#[test]
fn compose0_two_crossings_canonical() {
    // Oracle: enumerate both slice orders, keep the orbit minimum.
    let sig = wire_sig();
    let c = gen(&sig, "cross").compose0(&gen(&sig, "cross")).unwrap();
    let orbit = exchange_orbit(&c);
    assert_eq!(orbit.len(), 2);
    let min = orbit.iter().min_by_key(|d| d.slices().to_vec()).unwrap();
    assert_eq!(&c, min);
    assert_eq!(c.slices()[0].offset, 0, "left crossing first");
    assert_eq!(c.slices()[1].offset, 2);
}

#[test]
fn compose1_identity_neutral() {
    let sig = wire_sig();
    let cross = gen(&sig, "cross");
    assert_eq!(idw(&sig, 2).compose1(&cross).unwrap(), cross);
    assert_eq!(cross.compose1(&idw(&sig, 2)).unwrap(), cross);
}

#[test]
fn compose1_stacking() {
    let sig = wire_sig();
    let cross = gen(&sig, "cross");
    let st = cross.compose1(&cross).unwrap();
    assert_eq!(st.slices().len(), 2);
    assert!(st.slices().iter().all(|s| s.offset == 0));
}

#[test]
fn compose1_braid_chaining() {
    // (cross ⋆0 id) ⋆1 (id ⋆0 cross): hand-composed slice chain on 3 wires.
    let sig = wire_sig();
    let a = gen(&sig, "cross").compose0(&idw(&sig, 1)).unwrap();
    let b = idw(&sig, 1).compose0(&gen(&sig, "cross")).unwrap();
    let braid = a.compose1(&b).unwrap();
    assert_eq!(braid.slices().len(), 2);
    assert_eq!(braid.slices()[0], Slice { offset: 0, gen: sig.two("cross").unwrap() });
    assert_eq!(braid.slices()[1], Slice { offset: 1, gen: sig.two("cross").unwrap() });
}

#[test]
fn compose_boundary_errors() {
    let sig = wire_sig();
    let cross = gen(&sig, "cross");
    assert!(idw(&sig, 1).compose1(&cross).is_err());
}

#[test]
fn canonicalize_disjoint_reorder() {
    // (id ⋆0 cross) ⋆1 (cross ⋆0 id) on 4 wires: the offset-0 crossing
    // moves first. Oracle: exhaustive orbit, pick the minimum.
    let sig = wire_sig();
    let top = idw(&sig, 2).compose0(&gen(&sig, "cross")).unwrap();
    let bot = gen(&sig, "cross").compose0(&idw(&sig, 2)).unwrap();
    let d = top.compose1(&bot).unwrap();
    let orbit = exchange_orbit(&d);
    let min = orbit.iter().min_by_key(|x| x.slices().to_vec()).unwrap().clone();
    assert_eq!(d, min);
    assert_eq!(d.slices()[0].offset, 0);
    assert_eq!(d.slices()[1].offset, 2);
}

#[test]
fn canonicalize_overlapping_stays() {
    let sig = wire_sig();
    let st = gen(&sig, "cross").compose1(&gen(&sig, "cross")).unwrap();
    assert_eq!(st.canonicalize(), st);
}

#[test]
fn canonicalize_idempotent_on_random() {
    let sig = wire_sig();
    let mut rng = sample::rng(7);
    for _ in 0..200 {
        let d = sample::random_diagram(&sig, &mut rng, 4, 8);
        let c = d.canonicalize();
        assert_eq!(c.canonicalize(), c, "idempotent");
    }
}

#[test]
fn canonicalize_constant_after_exchange_walk() {
    let sig = wire_sig();
    let mut rng = sample::rng(13);
    for _ in 0..120 {
        let d = sample::random_diagram(&sig, &mut rng, 4, 8);
        let mut cur = d.slices().to_vec();
        for _ in 0..6 {
            let n = cur.len();
            if n < 2 {
                break;
            }
            let i = rng.gen_range(0..n - 1);
            if let Some((a, b)) = super::canonical::swapped(&sig, &cur[i], &cur[i + 1]) {
                cur[i] = a;
                cur[i + 1] = b;
            }
        }
        let walked = Diagram::from_slices(&sig, d.source().clone(), cur).unwrap();
        assert_eq!(walked, d.canonicalize(), "orbit constant");
    }
}

#[test]
fn canonicalize_equals_orbit_minimum() {
    let sig = wire_sig();
    let mut rng = sample::rng(11);
    for _ in 0..60 {
        let d = sample::random_diagram(&sig, &mut rng, 3, 6);
        let orbit = exchange_orbit(&d);
        let min = orbit.iter().min_by_key(|x| x.slices().to_vec()).unwrap().clone();
        assert_eq!(d.canonicalize(), min);
    }
}

#[test]
fn find_matches_self() {
    let sig = wire_sig();
    let cross = gen(&sig, "cross");
    let ms = find_matches(&cross, &cross);
    assert_eq!(ms.len(), 1);
    let c = &ms[0];
    assert!(c.above.is_identity() && c.below.is_identity());
    assert!(c.left.is_empty() && c.right.is_empty());
    assert_eq!(plug(c, &cross).unwrap(), cross);
}

#[test]
fn find_matches_two_in_stack() {
    let sig = wire_sig();
    let cross = gen(&sig, "cross");
    let host = cross.compose1(&cross).unwrap();
    let ms = find_matches(&cross, &host);
    assert_eq!(ms.len(), 2);
    for c in &ms {
        assert_eq!(plug(c, &cross).unwrap(), host, "round trip");
    }
}

#[test]
fn find_matches_none_in_identity() {
    let sig = wire_sig();
    let ms = find_matches(&gen(&sig, "cross"), &idw(&sig, 2));
    assert!(ms.is_empty());
}

/// Brute-force oracle: over the full interchange orbit, every contiguous
/// window equal to the (shifted) pattern gives an occurrence; occurrences
/// are identified by replacing the window with a marker generator.
fn oracle_occurrences(pattern: &Diagram, host: &Diagram, marker: GenId) -> Vec<Diagram> {
    let sig = host.signature();
    let mut keys = std::collections::BTreeSet::new();
    for rep in exchange_orbit(host) {
        let slices = rep.slices();
        let m = pattern.slices().len();
        if m == 0 || m > slices.len() {
            continue;
        }
        for start in 0..=slices.len() - m {
            let window = &slices[start..start + m];
            let delta = match window[0].offset.checked_sub(pattern.slices()[0].offset) {
                Some(d) => d,
                None => continue,
            };
            let ok = window
                .iter()
                .zip(pattern.slices())
                .all(|(h, p)| h.gen == p.gen && h.offset == p.offset + delta);
            if !ok {
                continue;
            }
            let mut with_marker: Vec<Slice> = slices[..start].to_vec();
            with_marker.push(Slice { offset: delta, gen: marker });
            with_marker.extend_from_slice(&slices[start + m..]);
            if let Ok(d) = Diagram::from_slices(sig, rep.source().clone(), with_marker) {
                keys.insert(d);
            }
        }
    }
    keys.into_iter().collect()
}

#[test]
fn find_matches_agrees_with_bruteforce() {
    let sig = wire_sig();
    let marker = sig.two("mark").unwrap();
    let cross = gen(&sig, "cross");
    let mark_diag = gen(&sig, "mark");
    let mut rng = sample::rng(23);
    let mut checked = 0;
    for _ in 0..120 {
        let host = sample::random_diagram(&sig, &mut rng, 3, 6);
        if host.count_gens(|g| g == marker) > 0 {
            continue;
        }
        let expected = oracle_occurrences(&cross, &host, marker);
        let got: std::collections::BTreeSet<Diagram> = find_matches(&cross, &host)
            .iter()
            .map(|c| plug(c, &mark_diag).unwrap())
            .collect();
        let got: Vec<Diagram> = got.into_iter().collect();
        if got != expected {
            println!("HOST slices {:?}", host.slices());
            println!("GOT {} keys:", got.len());
            for g in &got { println!("   {:?}", g.slices()); }
            println!("EXPECTED {} keys:", expected.len());
            for g in &expected { println!("   {:?}", g.slices()); }
            panic!("mismatch");
        }
        checked += 1;
    }
    assert!(checked > 40);
}

#[test]
fn plug_round_trip_on_matches() {
    let sig = wire_sig();
    let mut rng = sample::rng(31);
    let pats = [gen(&sig, "cross"), gen(&sig, "cap"), gen(&sig, "dot")];
    for _ in 0..60 {
        let host = sample::random_diagram(&sig, &mut rng, 3, 6);
        for p in &pats {
            for c in find_matches(p, &host) {
                assert_eq!(plug(&c, p).unwrap(), host);
            }
        }
    }
}

#[test]
fn plug_trivial_and_identity_hole() {
    let sig = wire_sig();
    let cross = gen(&sig, "cross");
    let triv = Context::trivial(&sig, (cross.source().clone(), cross.target().clone()));
    assert_eq!(plug(&triv, &cross).unwrap(), cross);

    let ctx = Context {
        above: idw(&sig, 2),
        left: Word::identity(sig.zero("*").unwrap()),
        right: Word::identity(sig.zero("*").unwrap()),
        below: cross.clone(),
        hole: (idw(&sig, 2).source().clone(), idw(&sig, 2).source().clone()),
    };
    assert_eq!(plug(&ctx, &idw(&sig, 2)).unwrap(), cross);
}

#[test]
fn plug_whisker_evaluation() {
    let sig = wire_sig();
    let cross = gen(&sig, "cross");
    let w = sig.one("w").unwrap();
    let pt = sig.zero("*").unwrap();
    let left = Word::new(&sig, vec![w], pt).unwrap();
    let src3 = Word::new(&sig, vec![w, w, w], pt).unwrap();
    let ctx = Context {
        above: Diagram::identity(&sig, src3.clone()),
        left,
        right: Word::identity(pt),
        below: Diagram::identity(&sig, src3),
        hole: (cross.source().clone(), cross.target().clone()),
    };
    let expect = idw(&sig, 1).compose0(&cross).unwrap();
    assert_eq!(plug(&ctx, &cross).unwrap(), expect);
}

#[test]
fn compose_associative_up_to_canonical_form() {
    let sig = wire_sig();
    let mut rng = sample::rng(41);
    for _ in 0..50 {
        let a = sample::random_diagram(&sig, &mut rng, 2, 3);
        let b = sample::random_diagram(&sig, &mut rng, 2, 3);
        let c = sample::random_diagram(&sig, &mut rng, 2, 3);
        let ab_c = a.compose0(&b).and_then(|ab| ab.compose0(&c));
        let a_bc = b.compose0(&c).and_then(|bc| a.compose0(&bc));
        match (ab_c, a_bc) {
            (Ok(x), Ok(y)) => assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            other => panic!("associativity mismatch: {other:?}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn prop_canonicalize_orbit_invariant(seed in 0u64..1_000_000) {
        let sig = wire_sig();
        let mut rng = sample::rng(seed);
        let d = sample::random_diagram(&sig, &mut rng, 3, 6);
        for rep in exchange_orbit(&d).into_iter().take(24) {
            prop_assert_eq!(rep.canonicalize(), d.canonicalize());
        }
    }
}
#[test]
fn debug_canonical_mismatch() {
    use crate::diagram::*;
    use crate::sample;
    let sig = {
        let mut b = SignatureBuilder::new();
        let pt = b.zero("*").unwrap();
        let w = b.one("w", pt, pt).unwrap();
        let ww = Word::new(b.current(), vec![w, w], pt).unwrap();
        let e = Word::identity(pt);
        b.two("cross", ww.clone(), ww.clone()).unwrap();
        b.two("cap", ww.clone(), e.clone()).unwrap();
        b.two("cup", e.clone(), ww.clone()).unwrap();
        b.two("dot", Word::new(b.current(), vec![w], pt).unwrap(), Word::new(b.current(), vec![w], pt).unwrap()).unwrap();
        b.two("mark", ww.clone(), ww).unwrap();
        std::sync::Arc::new(b.finish())
    };
    let mut rng = sample::rng(11);
    for k in 0..200 {
        let d = sample::random_diagram(&sig, &mut rng, 3, 6);
        let orbit = exchange_orbit(&d);
        let min = orbit.iter().min_by_key(|x| x.slices().to_vec()).unwrap().clone();
        let can = d.canonicalize();
        if can != min {
            println!("=== case {k}");
            println!("input  slices: {:?}", d.slices());
            println!("canon  slices: {:?}", can.slices());
            println!("orbmin slices: {:?}", min.slices());
            println!("orbit size {}", orbit.len());
            for o in &orbit { println!("   rep {:?}", o.slices()); }
            panic!("mismatch");
        }
    }
}

#[test]
fn debug_missing_match() {
    let sig = wire_sig();
    let w = sig.one("w").unwrap();
    let pt = sig.zero("*").unwrap();
    // Host: [cross@0, cross@1, cup@1, cross@0, cap@0]
    let src = Word::new(&sig, vec![w, w, w], pt).unwrap();
    let cross = sig.two("cross").unwrap();
    let cup = sig.two("cup").unwrap();
    let cap = sig.two("cap").unwrap();
    let host = Diagram::from_slices(
        &sig,
        src,
        vec![
            Slice { offset: 0, gen: cross },
            Slice { offset: 1, gen: cross },
            Slice { offset: 1, gen: cup },
            Slice { offset: 0, gen: cross },
            Slice { offset: 0, gen: cap },
        ],
    )
    .unwrap();
    println!("host canonical {:?}", host.slices());
    let pat = gen(&sig, "cross");
    let ms = find_matches(&pat, &host);
    println!("found {} matches", ms.len());
    for c in &ms {
        println!("  above={:?} left={} right={} below={:?}", c.above.slices(),
            c.left.len(), c.right.len(), c.below.slices());
    }
    assert_eq!(ms.len(), 3);
}
