use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand::seq::SliceRandom;

use raygroup::curve::{Curve, Place};
use raygroup::divisor::{congruent_mod, moduli, Divisor, Modulus};
use raygroup::field::Field;
use raygroup::function::Function;
use raygroup::poly::Poly;
use raygroup::riemann_roch::{effective_class, meq_witness, rr_space, rr_space_mod};
use raygroup::verify::{elliptic, p1};

/// |L_m(D)| by listing every a(x) + b(x) y over the common denominator and
/// testing valuations place by place. None if the search space is too big.
fn brute_count(curve: &Curve, d: &Divisor, m: &Modulus) -> Option<u64> {
    let field = curve.field();
    let inf = curve.infinity();
    let mut h = Poly::one(field);
    for (p, n) in d.terms() {
        if n > 0 && !p.is_infinite() {
            let e = p.ramification() as i64;
            h = h.mul(&p.poly().pow(((n + e - 1) / e) as u32, field), field);
        }
    }
    let top = d.coeff(&inf) + inf.ramification() as i64 * h.deg();
    if top < 0 {
        return Some(1);
    }
    let mut slots: Vec<(usize, bool)> = Vec::new();
    for i in 0..=top as usize {
        let w = if curve.is_elliptic() { 2 * i as i64 } else { i as i64 };
        if w <= top {
            slots.push((i, false));
        }
        if curve.is_elliptic() && w + 3 <= top {
            slots.push((i, true));
        }
    }
    let q = field.q() as u64;
    let total = q.checked_pow(slots.len() as u32)?;
    if total > 20_000 {
        return None;
    }
    let mut places: Vec<Place> = d.support();
    places.extend(m.support());
    places.push(inf.clone());
    if !h.is_constant() {
        for (g, _) in h.factor(field).unwrap().factors {
            places.extend(curve.places_above(&g));
        }
    }
    places.sort();
    places.dedup();
    let mut count = 0;
    for idx in 0..total {
        let mut a = vec![0u32; top as usize + 1];
        let mut b = vec![0u32; top as usize + 1];
        let mut k = idx;
        for &(i, y) in &slots {
            let c = (k % q) as u128;
            k /= q;
            if y {
                b[i] = field.element(c);
            } else {
                a[i] = field.element(c);
            }
        }
        let f = Function::new(curve, Poly::from_coeffs(field, a), Poly::from_coeffs(field, b), h.clone()).unwrap();
        if f.is_zero() {
            count += 1;
            continue;
        }
        let in_l = places.iter().all(|p| m.n(p) > 0 || f.valuation(p).unwrap() >= -d.coeff(p));
        if !in_l {
            continue;
        }
        let ok = if m.is_zero() {
            true
        } else {
            let p0 = &m.support()[0];
            match f.valuation(p0).unwrap() {
                v if v < 0 => false,
                _ => {
                    let val = f.evaluate(p0).unwrap();
                    let ext = p0.residue_field();
                    ext.in_base(&val).is_some_and(|c| congruent_mod(&f, m, c).unwrap())
                }
            }
        };
        if ok {
            count += 1;
        }
    }
    Some(count)
}

fn families() -> Vec<(Curve, Vec<Modulus>)> {
    let mut out = Vec::new();
    for curve in [p1(3, 1), p1(2, 2), elliptic(5, [0, 0, 0, 1, 0]), elliptic(3, [0, 0, 0, 2, 1])] {
        let ms = moduli(&curve, 2, 2);
        out.push((curve, ms));
    }
    out
}

#[test]
fn dimensions_match_brute_force() {
    let (mut checked, mut compared) = (0, 0);
    for (curve, ms) in families() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in ms {
            let s = m.support();
            let places: Vec<Place> = curve.places(2).into_iter().filter(|p| !s.contains(p)).collect();
            for _ in 0..3 {
                let mut d = Divisor::zero(&curve);
                for _ in 0..3 {
                    let p = places.choose(&mut rng).unwrap();
                    d.add_at(p, [-1, 1, 1, 2][checked % 4]);
                    checked += 1;
                }
                let sp = rr_space_mod(&curve, &d, &m).unwrap();
                if let Some(n) = brute_count(&curve, &d, &m) {
                    let q = curve.field().q() as u64;
                    assert_eq!(q.pow(sp.dim() as u32), n, "{curve}: D={d}, m={m}");
                    compared += 1;
                }
            }
        }
    }
    assert!(checked > 100);
    assert!(compared > 60, "only {compared} spaces small enough to list");
}

#[test]
fn basis_members_are_congruent_and_bounded() {
    for (curve, ms) in families() {
        for m in ms {
            if m.support().iter().any(|p| p.is_infinite()) {
                continue;
            }
            let d = Divisor::place(&curve, &curve.infinity(), 3);
            let sp = rr_space_mod(&curve, &d, &m).unwrap();
            for (f, &c) in sp.basis.iter().zip(&sp.constants) {
                assert!(congruent_mod(f, &m, c).unwrap(), "{curve}: {f} mod {m}");
                assert!(f.valuation(&curve.infinity()).unwrap() >= -3);
            }
        }
    }
}

#[test]
fn worked_spaces() {
    let c = p1(3, 1);
    let x = c.place_from_poly(&Poly::from_coeffs(c.field(), vec![0, 1])).unwrap();
    let m = Modulus::new(Divisor::place(&c, &x, 2)).unwrap();
    let d = Divisor::place(&c, &c.infinity(), 2);
    let sp = rr_space_mod(&c, &d, &m).unwrap();
    let basis: Vec<String> = sp.basis.iter().map(|f| f.to_string()).collect();
    assert_eq!((sp.dim(), sp.index(), basis), (2, 0, vec!["1".to_string(), "x^2".to_string()]));
    assert_eq!(rr_space(&c, &d).unwrap().dim(), 3);
}

#[test]
fn golden_effective_class() {
    let c = p1(3, 1);
    let x = c.place_from_poly(&Poly::from_coeffs(c.field(), vec![0, 1])).unwrap();
    let m = Modulus::new(Divisor::place(&c, &x, 2)).unwrap();
    let d = Divisor::place(&c, &c.infinity(), 2);
    let got: BTreeSet<String> = effective_class(&c, &d, &m).unwrap().iter().map(|e| e.to_string()).collect();
    // [x-1] + [x+1] prints with x-1 = x+2 over GF(3)
    let want: BTreeSet<String> = ["2*[inf]", "[x^2+1]", "[x+1]+[x+2]"].iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
}

#[test]
fn class_members_are_equivalent() {
    for (curve, ms) in families() {
        for m in ms.iter().filter(|m| !m.is_zero()).take(6) {
            let s = m.support();
            let b = curve.places(1).into_iter().find(|p| !s.contains(p)).unwrap();
            let d = Divisor::place(&curve, &b, 2 + m.degree());
            for e in effective_class(&curve, &d, m).unwrap() {
                let g = meq_witness(&curve, &d, &e, m).unwrap().expect("members are m-equivalent");
                assert!(congruent_mod(&g, m, 1).unwrap());
                assert_eq!(d.add(&g.divisor().unwrap()).unwrap(), e, "{curve}: {d} ~ {e} mod {m}");
            }
        }
    }
}
