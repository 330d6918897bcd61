use raygroup::classgroup::{
    canonical_map, class_number, closure, modulus_lattice, ray_class_group, unit_sequence_order, Character, Lattice,
};
use raygroup::curve::Curve;
use raygroup::divisor::{enumerate_effective, moduli, Divisor, Modulus};
use raygroup::error::Error;
use raygroup::poly::Poly;
use raygroup::riemann_roch::{genus_data, meq_witness};
use raygroup::verify::{elliptic, p1};

fn place(c: &Curve, coeffs: &[u32]) -> raygroup::curve::Place {
    c.place_from_poly(&Poly::from_coeffs(c.field(), coeffs.to_vec())).unwrap()
}

/// Splits the effective divisors of degree d0 prime to S into m-equivalence
/// classes with meq_witness alone; returns one representative list per class.
fn brute_classes(curve: &Curve, m: &Modulus, d0: i64) -> Vec<Vec<Divisor>> {
    let s = m.support();
    let mut classes: Vec<Vec<Divisor>> = Vec::new();
    for e in enumerate_effective(curve, d0, &s) {
        match classes.iter_mut().find(|c| meq_witness(curve, &c[0], &e, m).unwrap().is_some()) {
            Some(c) => c.push(e),
            None => classes.push(vec![e]),
        }
    }
    classes
}

#[test]
fn closure_agrees_with_brute_partition() {
    let cases: Vec<(Curve, i64)> = vec![(p1(3, 1), 3), (p1(2, 2), 2), (elliptic(5, [0, 0, 0, 1, 0]), 2)];
    for (curve, max_deg) in cases {
        for m in moduli(&curve, max_deg, 2) {
            let g = closure(&curve, &m, 2).unwrap();
            let d0 = genus_data(&curve, &m).pi + 1;
            let classes = brute_classes(&curve, &m, d0);
            assert_eq!(classes.len() as u64, g.order(), "{curve}: m={m}");
            let mut seen = Vec::new();
            for cls in &classes {
                let v = g.class_of(&cls[0]).unwrap();
                for e in &cls[1..] {
                    assert_eq!(g.class_of(e).unwrap(), v, "{curve}: {e} vs {} mod {m}", cls[0]);
                }
                assert!(!seen.contains(&v), "{curve}: two classes share {v:?} mod {m}");
                seen.push(v);
            }
        }
    }
}

#[test]
fn documented_groups() {
    let c = p1(3, 1);
    let x = place(&c, &[0, 1]);
    let inf = c.infinity();
    let two_x = Modulus::new(Divisor::place(&c, &x, 2)).unwrap();
    let x_inf = Modulus::new(Divisor::from_terms(&c, [(&x, 1), (&inf, 1)])).unwrap();
    assert_eq!(ray_class_group(&c, &two_x, 2).unwrap().invariants(), &[3]);
    assert_eq!(ray_class_group(&c, &x_inf, 2).unwrap().invariants(), &[2]);
    assert_eq!(unit_sequence_order(&c, &two_x).unwrap(), 3);
    assert_eq!(unit_sequence_order(&c, &x_inf).unwrap(), 2);
    assert_eq!(unit_sequence_order(&c, &Modulus::zero(&c)), Err(Error::ZeroModulus));

    let e = elliptic(5, [0, 0, 0, 1, 0]);
    let g = ray_class_group(&e, &Modulus::zero(&e), 2).unwrap();
    assert_eq!((g.invariants(), class_number(&e)), (&[2u64, 2][..], 4));
    let origin = e.rational_point(0, 0).unwrap();
    let m = Modulus::new(Divisor::place(&e, &origin, 1)).unwrap();
    assert_eq!(unit_sequence_order(&e, &m).unwrap(), 4);
    assert_eq!(ray_class_group(&e, &m, 2).unwrap().order(), 4);
}

#[test]
fn class_of_examples() {
    let c = p1(3, 1);
    let x = place(&c, &[0, 1]);
    let inf = c.infinity();
    let m = Modulus::new(Divisor::place(&c, &x, 2)).unwrap();
    let g = ray_class_group(&c, &m, 2).unwrap();
    let d = Divisor::from_terms(&c, [(&place(&c, &[2, 1]), 1), (&inf, -1)]);
    let v = g.class_of(&d).unwrap();
    assert_ne!(v, vec![0]);
    assert_eq!(g.class_of(&d.scale(2)).unwrap(), g.add(&v, &v));
    assert_eq!(g.class_of(&d.scale(3)).unwrap(), vec![0]);
    let p0 = g.base_point().clone();
    assert_eq!(g.class_of(&Divisor::from_terms(&c, [(&p0, 2), (&p0, -2)])).unwrap(), vec![0]);
    assert!(matches!(g.class_of(&Divisor::place(&c, &x, 1)), Err(Error::NotPrimeToSupport(_))));
}

#[test]
fn level_map_examples() {
    let c = p1(3, 1);
    let x = place(&c, &[0, 1]);
    let inf = c.infinity();
    let two_x = Modulus::new(Divisor::place(&c, &x, 2)).unwrap();
    let one_x = Modulus::new(Divisor::place(&c, &x, 1)).unwrap();
    let g = ray_class_group(&c, &two_x, 2).unwrap();
    let h = ray_class_group(&c, &one_x, 2).unwrap();
    let map = canonical_map(&g, &h).unwrap();
    assert!(h.invariants().is_empty());
    assert_eq!(map.kernel_invariants(&g), vec![3]);
    let id = canonical_map(&g, &g).unwrap();
    assert_eq!(id.matrix, vec![vec![1]]);
    assert!(matches!(canonical_map(&h, &g), Err(Error::NotComparable(_))));

    let top = Modulus::new(Divisor::from_terms(&c, [(&x, 2), (&inf, 1)])).unwrap();
    let mid = Modulus::new(Divisor::from_terms(&c, [(&x, 1), (&inf, 1)])).unwrap();
    let gt = ray_class_group(&c, &top, 2).unwrap();
    let gm = ray_class_group(&c, &mid, 2).unwrap();
    assert_eq!(canonical_map(&gt, &gm).unwrap().kernel(&gt).len(), 3);

    let (inf_m, sup_m) = modulus_lattice(&two_x, &mid).unwrap();
    assert_eq!((inf_m, sup_m), (one_x, top.clone()));
    assert_eq!(modulus_lattice(&top, &top).unwrap().0, top);
}

#[test]
fn conductor_examples() {
    let c = p1(3, 1);
    let x = place(&c, &[0, 1]);
    let inf = c.infinity();
    let two_x = Modulus::new(Divisor::place(&c, &x, 2)).unwrap();
    let lat = Lattice::new(&c, &two_x, 2).unwrap();
    for chi in Character::all(lat.top.invariants()) {
        let want = if chi.order() == 1 { Modulus::zero(&c) } else { two_x.clone() };
        assert_eq!(lat.conductor(&chi).unwrap(), want);
    }

    let top = Modulus::new(Divisor::from_terms(&c, [(&x, 2), (&inf, 1)])).unwrap();
    let mid = Modulus::new(Divisor::from_terms(&c, [(&x, 1), (&inf, 1)])).unwrap();
    let lat = Lattice::new(&c, &top, 2).unwrap();
    // the character pulled back from the C2 at level [x] + [inf]
    let lv = lat.level(&mid).unwrap();
    let quad = Character::new(lv.group.invariants(), vec![1]).unwrap();
    let pulled: Vec<u64> = lv.map.matrix.iter().map(|row| row[0] * quad.exps[0] % 2).collect();
    let exps: Vec<u64> =
        pulled.iter().zip(lat.top.invariants()).map(|(v, d)| v * (d / 2) % d).collect();
    let chi = Character::new(lat.top.invariants(), exps).unwrap();
    assert_eq!(chi.order(), 2);
    assert_eq!(lat.conductor(&chi).unwrap(), mid);
}
