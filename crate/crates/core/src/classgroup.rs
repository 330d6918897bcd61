//! Ray class groups Cl_m^0, the maps between levels, and conductors.
//!
//! A class of degree-0 divisors prime to S is stored as its canonical
//! effective representative: the least effective E of least degree d0 >= pi
//! with E m-equivalent to D + d0*P0. The group is grown one generator
//! [P] - deg(P)*P0 at a time; each generator contributes one relation and the
//! relation matrix is put in Smith form.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::curve::{Curve, Place};
use crate::divisor::{Divisor, Modulus};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::riemann_roch::{effective_class, genus_data};
use crate::snf::{smith_normal_form, IntegerMatrix};

/// Cl_m^0 with coordinates on a Smith basis.
#[derive(Clone)]
pub struct RayClassGroup {
    curve: Curve,
    modulus: Modulus,
    base_point: Place,
    /// Nontrivial invariant factors d1 | d2 | ...
    invariants: Vec<u64>,
    /// Degree-0 divisors whose classes form the Smith basis.
    generators: Vec<Divisor>,
    raw_generators: Vec<Divisor>,
    /// Canonical representative -> word in the raw generators.
    table: HashMap<Divisor, Vec<i64>>,
    /// Columns of V that survive (those with d_i > 1), as rows over raw generators.
    projection: Vec<Vec<i128>>,
    degree_bound: usize,
}

impl fmt::Debug for RayClassGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl[{}] {:?}", self.modulus, self.invariants)
    }
}

impl RayClassGroup {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn base_point(&self) -> &Place {
        &self.base_point
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn generators(&self) -> &[Divisor] {
        &self.generators
    }

    /// The divisors [P] - deg(P)*P0 the closure was grown from.
    pub fn raw_generators(&self) -> &[Divisor] {
        &self.raw_generators
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    /// Every element, as coordinate vectors in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariants {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..d).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.invariants).map(|((x, y), d)| (x + y) % d).collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn coords_of_word(&self, word: &[i64]) -> Vec<u64> {
        self.projection
            .iter()
            .zip(&self.invariants)
            .map(|(col, &d)| {
                let s: i128 = col.iter().zip(word).map(|(a, &w)| a * w as i128).sum();
                s.rem_euclid(d as i128) as u64
            })
            .collect()
    }

    /// Coordinates of the class of D - deg(D)*P0.
    pub fn class_of(&self, d: &Divisor) -> Result<Vec<u64>> {
        if d.curve() != &self.curve {
            return Err(Error::CurveMismatch);
        }
        if !d.is_prime_to(&self.modulus.support()) {
            return Err(Error::NotPrimeToSupport(d.to_string()));
        }
        let mut d0 = d.clone();
        d0.add_at(&self.base_point, -d.degree());
        let rep = canonical_representative(&self.curve, &self.modulus, &self.base_point, &d0)?;
        match self.table.get(&rep) {
            Some(word) => Ok(self.coords_of_word(word)),
            None => Err(Error::GeneratorBoundTooSmall { found: self.order(), predicted: self.order() + 1 }),
        }
    }
}

/// Least degree-1 place outside S.
pub fn base_point(curve: &Curve, m: &Modulus) -> Result<Place> {
    let s = m.support();
    curve.places_of_degree(1).into_iter().find(|p| !s.contains(p)).ok_or(Error::NoRationalBasePoint)
}

/// The canonical effective representative of the class of a degree-0 divisor.
pub fn canonical_representative(curve: &Curve, m: &Modulus, p0: &Place, d: &Divisor) -> Result<Divisor> {
    debug_assert_eq!(d.degree(), 0);
    let pi = genus_data(curve, m).pi;
    // a class always has an effective representative once d0 > 2*pi - 2 + deg m
    let top = 2 * pi + m.degree() + 2;
    for d0 in pi..=top {
        let mut t = d.clone();
        t.add_at(p0, d0);
        if let Some(e) = effective_class(curve, &t, m)?.into_iter().next() {
            return Ok(e);
        }
    }
    Err(Error::InvalidArgument(format!("no effective representative for {d}")))
}

/// The subgroup generated by the classes of places of degree <= `bound`,
/// computed by closure alone.
pub fn closure(curve: &Curve, m: &Modulus, bound: usize) -> Result<RayClassGroup> {
    let p0 = base_point(curve, m)?;
    let s = m.support();
    let raw: Vec<Divisor> = curve
        .places(bound)
        .into_iter()
        .filter(|p| !s.contains(p) && *p != p0)
        .map(|p| {
            let mut d = Divisor::place(curve, &p, 1);
            d.add_at(&p0, -(p.degree() as i64));
            d
        })
        .collect();
    let k = raw.len();
    let reduce = |rep: &Divisor, g: &Divisor| -> Result<Divisor> {
        let mut d = rep.add(g)?;
        d.add_at(&p0, -rep.degree());
        canonical_representative(curve, m, &p0, &d)
    };
    let zero = canonical_representative(curve, m, &p0, &Divisor::zero(curve))?;
    let mut elements: Vec<(Divisor, Vec<i64>)> = vec![(zero.clone(), vec![0; k])];
    let mut table: HashMap<Divisor, Vec<i64>> = HashMap::from([(zero, vec![0; k])]);
    let mut relations: Vec<Vec<i128>> = Vec::with_capacity(k);
    for (i, g) in raw.iter().enumerate() {
        let base: Vec<(Divisor, Vec<i64>)> = elements.clone();
        let mut coset = base.clone();
        let mut j = 0i64;
        loop {
            j += 1;
            // the first element of the next coset decides whether it is new
            let head = reduce(&coset[0].0, g)?;
            if let Some(w) = table.get(&head) {
                let mut rel: Vec<i128> = w.iter().map(|&x| -(x as i128)).collect();
                rel[i] += j as i128;
                relations.push(rel);
                break;
            }
            let mut next = Vec::with_capacity(coset.len());
            for (idx, (rep, word)) in coset.iter().enumerate() {
                let r = if idx == 0 { head.clone() } else { reduce(rep, g)? };
                let mut w = word.clone();
                w[i] += 1;
                table.insert(r.clone(), w.clone());
                next.push((r, w));
            }
            elements.extend(next.iter().cloned());
            coset = next;
        }
        let _ = base;
    }
    let (invariants, projection) = if k == 0 {
        (Vec::new(), Vec::new())
    } else {
        let smith = smith_normal_form(&IntegerMatrix::from_rows(&relations));
        let diag = smith.d.diagonal();
        let mut inv = Vec::new();
        let mut proj = Vec::new();
        for (c, &di) in diag.iter().enumerate() {
            let di = di.unsigned_abs();
            if di == 0 {
                return Err(Error::InvalidArgument("relation matrix is singular".into()));
            }
            if di > 1 {
                inv.push(di as u64);
                proj.push((0..k).map(|r| smith.v.get(r, c)).collect());
            }
        }
        (inv, proj)
    };
    let mut group = RayClassGroup {
        curve: curve.clone(),
        modulus: m.clone(),
        base_point: p0.clone(),
        invariants,
        generators: Vec::new(),
        raw_generators: raw,
        table,
        projection,
        degree_bound: bound,
    };
    // a small representative for each Smith basis vector
    let mut reps: BTreeMap<usize, Divisor> = BTreeMap::new();
    for (rep, word) in &elements {
        let c = group.coords_of_word(word);
        let ones: Vec<usize> = c.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i).collect();
        if ones.len() == 1 && c[ones[0]] == 1 {
            let mut d = rep.clone();
            d.add_at(&p0, -rep.degree());
            let cur = reps.entry(ones[0]).or_insert_with(|| d.clone());
            if (d.support().len(), &d) < (cur.support().len(), &*cur) {
                *cur = d;
            }
        }
    }
    group.generators = (0..group.invariants.len()).map(|i| reps[&i].clone()).collect();
    Ok(group)
}

/// Cl_m^0, certified against the predicted order; the degree bound escalates to 3.
pub fn ray_class_group(curve: &Curve, m: &Modulus, bound: usize) -> Result<RayClassGroup> {
    let predicted = if m.is_zero() { class_number(curve) } else { unit_sequence_order(curve, m)? };
    let mut b = bound.max(1);
    loop {
        let g = closure(curve, m, b)?;
        if g.order() == predicted {
            return Ok(g);
        }
        if g.order() > predicted || b >= 3 {
            return Err(Error::GeneratorBoundTooSmall { found: g.order(), predicted });
        }
        b += 1;
    }
}

/// |Cl^0|: 1 on P1, the number of rational points on an elliptic curve
/// (counted by trying every affine pair).
pub fn class_number(curve: &Curve) -> u64 {
    if !curve.is_elliptic() {
        return 1;
    }
    let a = curve.coefficients();
    let f = curve.field();
    let [a1, a2, a3, a4, a6] = a;
    let mut count = 1u64;
    for x in f.elements() {
        for y in f.elements() {
            let lhs = f.add(&f.mul(&y, &y), &f.mul(&y, &f.add(&f.mul(&a1, &x), &a3)));
            let x2 = f.mul(&x, &x);
            let rhs = f.add(&f.add(&f.mul(&x2, &x), &f.mul(&a2, &x2)), &f.add(&f.mul(&a4, &x), &a6));
            if lhs == rhs {
                count += 1;
            }
        }
    }
    count
}

/// |Cl^0| * prod over S of (q_P^n_P - q_P^(n_P-1)) / (q - 1).
pub fn unit_sequence_order(curve: &Curve, m: &Modulus) -> Result<u64> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let q = curve.field().q() as u128;
    let mut units: u128 = 1;
    for (p, n) in m.terms() {
        let qp = q.pow(p.degree() as u32);
        units *= qp.pow(n as u32) - qp.pow(n as u32 - 1);
    }
    Ok((class_number(curve) as u128 * units / (q - 1)) as u64)
}

/// The map Cl_m^0 -> Cl_m'^0 for m' <= m.
#[derive(Clone, Debug)]
pub struct LevelMap {
    pub source: Modulus,
    pub target: Modulus,
    pub source_invariants: Vec<u64>,
    pub target_invariants: Vec<u64>,
    /// Row i is the image of the i-th source basis vector.
    pub matrix: Vec<Vec<u64>>,
}

impl LevelMap {
    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.target_invariants.len()];
        for (xi, row) in x.iter().zip(&self.matrix) {
            for (o, (r, d)) in out.iter_mut().zip(row.iter().zip(&self.target_invariants)) {
                *o = (*o + xi % d * r) % d;
            }
        }
        out
    }

    pub fn kernel(&self, source: &RayClassGroup) -> Vec<Vec<u64>> {
        source.elements().into_iter().filter(|x| self.apply(x).iter().all(|&v| v == 0)).collect()
    }

    pub fn kernel_invariants(&self, source: &RayClassGroup) -> Vec<u64> {
        structure(&self.kernel(source), &self.source_invariants)
    }

    pub fn is_surjective(&self, source: &RayClassGroup) -> bool {
        let mut image: Vec<Vec<u64>> = source.elements().iter().map(|x| self.apply(x)).collect();
        image.sort();
        image.dedup();
        image.len() as u64 == self.target_invariants.iter().product::<u64>()
    }
}

pub fn canonical_map(source: &RayClassGroup, target: &RayClassGroup) -> Result<LevelMap> {
    if source.curve != target.curve {
        return Err(Error::CurveMismatch);
    }
    if !target.modulus.leq(&source.modulus) {
        return Err(Error::NotComparable(format!("{} is not below {}", target.modulus, source.modulus)));
    }
    let matrix = source.generators.iter().map(|g| target.class_of(g)).collect::<Result<Vec<_>>>()?;
    Ok(LevelMap {
        source: source.modulus.clone(),
        target: target.modulus.clone(),
        source_invariants: source.invariants.clone(),
        target_invariants: target.invariants.clone(),
        matrix,
    })
}

/// Invariant factors of a finite subgroup given by its elements.
pub fn structure(elements: &[Vec<u64>], ambient: &[u64]) -> Vec<u64> {
    let n = elements.len() as u64;
    let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            // a_k = log_p |K[p^k]|; factors of order >= p^k number a_k - a_(k-1)
            let mut logs = vec![0u32];
            let mut pk = 1u64;
            loop {
                pk *= p;
                let killed = elements
                    .iter()
                    .filter(|x| x.iter().zip(ambient).all(|(&v, &d)| (v as u128 * pk as u128).is_multiple_of(d as u128)))
                    .count() as u64;
                let a = killed.ilog(p);
                logs.push(a);
                if killed == n.pow(1) / (n / p_part(n, p)) {
                    break;
                }
            }
            let mut exps = Vec::new();
            for k in 1..logs.len() {
                let at_least_k = logs[k] - logs[k - 1];
                let at_least_next = if k + 1 < logs.len() { logs[k + 1] - logs[k] } else { 0 };
                for _ in 0..(at_least_k - at_least_next) {
                    exps.push(k as u32);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            by_prime.push((p, exps));
        }
        p += 1;
    }
    let len = by_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for (p, exps) in &by_prime {
        for (i, e) in exps.iter().enumerate() {
            out[i] *= p.pow(*e);
        }
    }
    out.reverse();
    out
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

/// chi(g_i) = exps[i] / d_i in Q/Z.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub invariants: Vec<u64>,
    pub exps: Vec<u64>,
}

impl Character {
    pub fn new(invariants: &[u64], exps: Vec<u64>) -> Result<Character> {
        if exps.len() != invariants.len() {
            return Err(Error::InvalidCharacter(format!("expected {} exponents", invariants.len())));
        }
        let exps = exps.iter().zip(invariants).map(|(e, d)| e % d).collect();
        Ok(Character { invariants: invariants.to_vec(), exps })
    }

    pub fn trivial(invariants: &[u64]) -> Character {
        Character { invariants: invariants.to_vec(), exps: vec![0; invariants.len()] }
    }

    /// Every character of the group, in lexicographic order of exponents.
    pub fn all(invariants: &[u64]) -> Vec<Character> {
        let mut out = vec![Vec::new()];
        for &d in invariants {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..d).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|exps| Character { invariants: invariants.to_vec(), exps }).collect()
    }

    fn lcm(&self) -> u64 {
        self.invariants.iter().fold(1, |a, &b| a / gcd(a, b) * b)
    }

    /// chi(x) as a numerator over the exponent of the group.
    pub fn eval(&self, x: &[u64]) -> u64 {
        let l = self.lcm();
        self.exps.iter().zip(x).zip(&self.invariants).map(|((e, xi), d)| e * xi % d * (l / d)).sum::<u64>() % l
    }

    pub fn is_trivial_on(&self, elements: &[Vec<u64>]) -> bool {
        elements.iter().all(|x| self.eval(x) == 0)
    }

    /// Order of chi in the dual group.
    pub fn order(&self) -> u64 {
        let l = self.lcm();
        let v: Vec<u64> = self.exps.iter().zip(&self.invariants).map(|(e, d)| e * (l / d) % l).collect();
        let g = v.iter().fold(l, |a, &b| gcd(a, b));
        l / g
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Pointwise min and max of two moduli.
pub fn modulus_lattice(a: &Modulus, b: &Modulus) -> Result<(Modulus, Modulus)> {
    a.lattice(b)
}

/// Cl_m'^0 for every m' <= m, with the maps and kernels from the top.
pub struct Lattice {
    pub top: RayClassGroup,
    pub levels: Vec<Level>,
}

pub struct Level {
    pub group: RayClassGroup,
    pub map: LevelMap,
    pub kernel: Vec<Vec<u64>>,
}

impl Lattice {
    pub fn new(curve: &Curve, m: &Modulus, bound: usize) -> Result<Lattice> {
        let top = ray_class_group(curve, m, bound)?;
        let mut levels = Vec::new();
        for sub in m.submoduli() {
            let group = if &sub == m { top.clone() } else { ray_class_group(curve, &sub, bound)? };
            let map = canonical_map(&top, &group)?;
            let kernel = map.kernel(&top);
            levels.push(Level { group, map, kernel });
        }
        Ok(Lattice { top, levels })
    }

    pub fn level(&self, m: &Modulus) -> Option<&Level> {
        self.levels.iter().find(|l| l.group.modulus() == m)
    }

    /// Does chi factor through Cl_m'^0, i.e. vanish on the kernel toward m'?
    pub fn factors_through(&self, chi: &Character, m: &Modulus) -> Option<bool> {
        self.level(m).map(|l| chi.is_trivial_on(&l.kernel))
    }

    /// The conductor: the smallest level chi factors through. Errors if the
    /// levels it factors through have no least element.
    pub fn conductor(&self, chi: &Character) -> Result<Modulus> {
        let through: Vec<&Modulus> =
            self.levels.iter().filter(|l| chi.is_trivial_on(&l.kernel)).map(|l| l.group.modulus()).collect();
        let mut inf = through.first().map(|m| (*m).clone()).ok_or_else(|| Error::InvalidCharacter("no level".into()))?;
        for m in &through[1..] {
            inf = inf.lattice(m)?.0;
        }
        if !through.contains(&&inf) {
            return Err(Error::InvalidCharacter(format!("levels of {:?} have no least element", chi.exps)));
        }
        Ok(inf)
    }
}

pub fn character_conductor(curve: &Curve, m: &Modulus, chi: &Character) -> Result<Modulus> {
    Lattice::new(curve, m, 2)?.conductor(chi)
}

/// Whether two characters of the same group agree on every generator.
pub fn injectivity_check(a: &Character, b: &Character) -> bool {
    a.invariants == b.invariants && a.exps == b.exps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::poly::Poly;

    fn p1(q: u32) -> Curve {
        Curve::projective_line(Fq::new(q, 1).unwrap())
    }

    fn pl(c: &Curve, v: &[i64]) -> Place {
        let f = c.field();
        c.place_from_poly(&Poly::from_coeffs(f, v.iter().map(|&k| f.from_int(k)).collect())).unwrap()
    }

    #[test]
    fn small_groups() {
        let c = p1(3);
        let x = pl(&c, &[0, 1]);
        let inf = c.infinity();
        let m = Modulus::new(Divisor::place(&c, &x, 2)).unwrap();
        let g = ray_class_group(&c, &m, 2).unwrap();
        assert_eq!(g.invariants(), &[3]);
        let m2 = Modulus::new(Divisor::from_terms(&c, [(&x, 1), (&inf, 1)])).unwrap();
        assert_eq!(ray_class_group(&c, &m2, 2).unwrap().invariants(), &[2]);
        assert_eq!(unit_sequence_order(&c, &m).unwrap(), 3);
        assert!(ray_class_group(&c, &Modulus::zero(&c), 2).unwrap().invariants().is_empty());
        let e = Curve::elliptic(Fq::new(5, 1).unwrap(), [0, 0, 0, 1, 0]).unwrap();
        assert_eq!(class_number(&e), 4);
        assert_eq!(ray_class_group(&e, &Modulus::zero(&e), 2).unwrap().invariants(), &[2, 2]);
        let o = e.places_of_degree(1)[1].clone();
        let mo = Modulus::new(Divisor::place(&e, &o, 1)).unwrap();
        assert_eq!(unit_sequence_order(&e, &mo).unwrap(), 4);
        assert_eq!(closure(&e, &mo, 2).unwrap().order(), 4);
    }

    #[test]
    fn class_coordinates() {
        let c = p1(3);
        let x = pl(&c, &[0, 1]);
        let m = Modulus::new(Divisor::place(&c, &x, 2)).unwrap();
        let g = ray_class_group(&c, &m, 2).unwrap();
        let d = Divisor::from_terms(&c, [(&pl(&c, &[-1, 1]), 1), (&c.infinity(), -1)]);
        let v = g.class_of(&d).unwrap();
        assert_ne!(v, vec![0]);
        let three = d.scale(3);
        assert_eq!(g.class_of(&three).unwrap(), vec![0]);
        assert_eq!(g.class_of(&Divisor::zero(&c)).unwrap(), vec![0]);
        // (1 - x^2) is 1 mod 2[x]
        let d2 = Divisor::from_terms(&c, [(&pl(&c, &[-1, 1]), 1), (&pl(&c, &[1, 1]), 1), (&c.infinity(), -2)]);
        assert_eq!(g.class_of(&d2).unwrap(), vec![0]);
    }

    #[test]
    fn maps_and_conductors() {
        let c = p1(3);
        let x = pl(&c, &[0, 1]);
        let inf = c.infinity();
        let m = Modulus::new(Divisor::from_terms(&c, [(&x, 2), (&inf, 1)])).unwrap();
        let lat = Lattice::new(&c, &m, 2).unwrap();
        assert_eq!(lat.top.order(), 6);
        let mid = Modulus::new(Divisor::from_terms(&c, [(&x, 1), (&inf, 1)])).unwrap();
        let lv = lat.level(&mid).unwrap();
        assert_eq!(lv.group.order(), 2);
        assert!(lv.map.is_surjective(&lat.top));
        assert_eq!(lv.kernel.len(), 3);
        assert_eq!(lv.map.kernel_invariants(&lat.top), vec![3]);
        assert_eq!(lat.conductor(&Character::trivial(lat.top.invariants())).unwrap(), Modulus::zero(&c));
        let conductors: Vec<String> =
            Character::all(lat.top.invariants()).iter().map(|chi| lat.conductor(chi).unwrap().to_string()).collect();
        assert!(conductors.contains(&"[x]+[inf]".to_string()));
        assert!(conductors.contains(&"2*[x]".to_string()));
        let (inf_m, sup_m) = modulus_lattice(
            &Modulus::new(Divisor::place(&c, &x, 2)).unwrap(),
            &mid,
        )
        .unwrap();
        assert_eq!((inf_m.to_string(), sup_m.to_string()), ("[x]".to_string(), "2*[x]+[inf]".to_string()));
    }

    #[test]
    fn structure_from_elements() {
        let amb = [2u64, 4];
        let all: Vec<Vec<u64>> = (0..2).flat_map(|a| (0..4).map(move |b| vec![a, b])).collect();
        assert_eq!(structure(&all, &amb), vec![2, 4]);
        let sub: Vec<Vec<u64>> = all.iter().filter(|v| v[1] % 2 == 0).cloned().collect();
        assert_eq!(structure(&sub, &amb), vec![2, 2]);
        let cyc = vec![vec![0, 0], vec![1, 1], vec![0, 2], vec![1, 3]];
        assert_eq!(structure(&cyc, &amb), vec![4]);
        let chars = Character::all(&[3]);
        assert!(!injectivity_check(&chars[1], &chars[2]));
        assert!(injectivity_check(&chars[1], &chars[1]));
    }
}
