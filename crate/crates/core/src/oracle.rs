//! Brute-force ground truth: G wr S_n built element by element.
//!
//! Everything here enumerates the whole group, so it is limited to groups of
//! at most [`ELEMENT_GUARD`] elements. Composite exponents are allowed.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::arith::{ratio, wreath_order, Prime};
use crate::error::{Error, Result};
use crate::groups::{lex_permutations, nonpower_classes, ClassStructure, GroupModel};
use crate::wreath::{
    class_info, count_classes, enumerate_types, is_rth_power_type, power_type, preimage_type,
    TypeMatrix,
};

pub const ELEMENT_GUARD: u64 = 1_000_000;

/// A pair `(f, pi)` with `f(i)` the G-coordinate at position `i` and
/// `pi[i]` the image of `i`; positions are `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub f: Vec<usize>,
    pub pi: Vec<usize>,
}

impl WreathElement {
    pub fn identity(n: usize) -> Self {
        WreathElement {
            f: vec![0; n],
            pi: (0..n).collect(),
        }
    }

    pub fn new(f: Vec<usize>, pi: Vec<usize>) -> Result<Self> {
        let n = pi.len();
        let mut seen = vec![false; n];
        for &x in &pi {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Input(format!("{pi:?} is not a permutation")));
            }
        }
        if f.len() != n {
            return Err(Error::Dimension(format!(
                "f has {} coordinates, pi moves {n}",
                f.len()
            )));
        }
        Ok(WreathElement { f, pi })
    }

    pub fn degree(&self) -> usize {
        self.pi.len()
    }

    fn pi_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.pi.iter().enumerate() {
            inv[x] = i;
        }
        inv
    }

    fn encode(&self, group_order: u64) -> u64 {
        let n = self.degree() as u64;
        let f = self
            .f
            .iter()
            .rev()
            .fold(0u64, |acc, &x| acc * group_order + x as u64);
        let p = self
            .pi
            .iter()
            .rev()
            .fold(0u64, |acc, &x| acc * n + x as u64);
        f * n.pow(n as u32) + p
    }
}

/// `(f, pi)(f', pi') = (f f'_pi, pi pi')` with `f'_pi(i) = f'(pi^-1(i))`.
pub fn wreath_multiply(
    a: &WreathElement,
    b: &WreathElement,
    g: &GroupModel,
) -> Result<WreathElement> {
    if a.degree() != b.degree() {
        return Err(Error::Dimension(format!(
            "degrees {} and {} differ",
            a.degree(),
            b.degree()
        )));
    }
    Ok(mul_unchecked(a, b, g))
}

fn mul_unchecked(a: &WreathElement, b: &WreathElement, g: &GroupModel) -> WreathElement {
    let inv = a.pi_inverse();
    let f = (0..a.degree())
        .map(|i| g.mul(a.f[i], b.f[inv[i]]))
        .collect();
    let pi = b.pi.iter().map(|&x| a.pi[x]).collect();
    WreathElement { f, pi }
}

/// `(f^-1_{pi^-1}, pi^-1)`.
pub fn wreath_inverse(a: &WreathElement, g: &GroupModel) -> WreathElement {
    let inv = a.pi_inverse();
    let f = (0..a.degree()).map(|i| g.inv(a.f[a.pi[i]])).collect();
    WreathElement { f, pi: inv }
}

/// `a^m` by repeated multiplication; `m = 0` gives the identity.
pub fn wreath_power(a: &WreathElement, m: u64, g: &GroupModel) -> WreathElement {
    let mut acc = WreathElement::identity(a.degree());
    for _ in 0..m {
        acc = mul_unchecked(&acc, a, g);
    }
    acc
}

/// `(f f_pi ... f_{pi^(m-1)}, pi^m)` evaluated directly.
pub fn closed_form_power(a: &WreathElement, m: u64, g: &GroupModel) -> WreathElement {
    let n = a.degree();
    let inv = a.pi_inverse();
    let f = (0..n)
        .map(|i| {
            let mut acc = g.identity();
            let mut pos = i;
            for _ in 0..m {
                acc = g.mul(acc, a.f[pos]);
                pos = inv[pos];
            }
            acc
        })
        .collect();
    let pi = (0..n).map(|i| (0..m).fold(i, |x, _| a.pi[x])).collect();
    WreathElement { f, pi }
}

/// Cycle products `f(j) f(pi^-1 j) ... f(pi^-(k-1) j)` for each cycle of
/// `pi`, starting each cycle from `start(cycle)`, paired with cycle length.
fn cycle_products(a: &WreathElement, g: &GroupModel, rotate: usize) -> Vec<(usize, u32)> {
    let n = a.degree();
    let inv = a.pi_inverse();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cycle = vec![s];
        seen[s] = true;
        let mut x = a.pi[s];
        while x != s {
            seen[x] = true;
            cycle.push(x);
            x = a.pi[x];
        }
        let start = cycle[rotate % cycle.len()];
        let mut acc = g.identity();
        let mut pos = start;
        for _ in 0..cycle.len() {
            acc = g.mul(acc, a.f[pos]);
            pos = inv[pos];
        }
        out.push((acc, cycle.len() as u32));
    }
    out
}

pub fn element_type(a: &WreathElement, cs: &ClassStructure) -> TypeMatrix {
    element_type_from(a, cs, 0)
}

/// Like [`element_type`], but each cycle product starts `rotate` steps into
/// its cycle. The type must not depend on `rotate`.
pub fn element_type_from(a: &WreathElement, cs: &ClassStructure, rotate: usize) -> TypeMatrix {
    let cells = cycle_products(a, cs.group(), rotate)
        .into_iter()
        .map(|(x, len)| ((cs.class_of(x), len), 1));
    TypeMatrix::new(cs.num_classes(), a.degree() as u32, cells).expect("cycles cover n points")
}

/// Number of elements of G wr S_n, failing if it exceeds the guard.
pub fn guarded_size(g: &GroupModel, n: u32) -> Result<u64> {
    let size = wreath_order(g.order() as u64, n);
    match u64::try_from(&size) {
        Ok(k) if k <= ELEMENT_GUARD => Ok(k),
        _ => Err(Error::GuardExceeded {
            size: size.to_string(),
            guard: ELEMENT_GUARD,
        }),
    }
}

/// Every element of G wr S_n. Fails above the guard.
pub fn all_elements(g: &GroupModel, n: u32) -> Result<Vec<WreathElement>> {
    let size = guarded_size(g, n)?;
    let n = n as usize;
    let m = g.order();
    let perms = lex_permutations(n);
    let mut out = Vec::with_capacity(size as usize);
    for pi in &perms {
        let mut f = vec![0usize; n];
        loop {
            out.push(WreathElement {
                f: f.clone(),
                pi: pi.clone(),
            });
            let Some(i) = (0..n).find(|&i| f[i] + 1 < m) else {
                break;
            };
            f[i] += 1;
            f[..i].iter_mut().for_each(|x| *x = 0);
        }
    }
    Ok(out)
}

/// `|{a^m : a in G wr S_n}|` by full enumeration.
pub fn power_image_count(g: &GroupModel, n: u32, m: u64) -> Result<u64> {
    let order = g.order() as u64;
    let image: HashSet<u64> = all_elements(g, n)?
        .iter()
        .map(|a| closed_form_power(a, m, g).encode(order))
        .collect();
    Ok(image.len() as u64)
}

/// `P_m(G wr S_n)` by full enumeration.
pub fn power_probability(g: &GroupModel, n: u32, m: u64) -> Result<BigRational> {
    let count = power_image_count(g, n, m)?;
    Ok(ratio(
        &BigUint::from(count),
        &wreath_order(g.order() as u64, n),
    ))
}

/// Types of the elements `a^r`, as a set.
pub fn power_image_types(cs: &ClassStructure, n: u32, m: u64) -> Result<BTreeSet<Vec<u32>>> {
    let g = cs.group();
    Ok(all_elements(g, n)?
        .iter()
        .map(|a| element_type(&closed_form_power(a, m, g), cs).to_dense())
        .collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub checked: u64,
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        // keep reports readable on a systematic failure
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

/// For every element, compares the type of `a^r` with the class-level power
/// map on types, and the closed-form power with iterated multiplication.
pub fn verify_power_types(cs: &ClassStructure, n: u32, r: Prime) -> Result<OracleReport> {
    let g = cs.group();
    let rv = r.get() as u64;
    let mut report = OracleReport::default();
    for a in all_elements(g, n)? {
        report.checked += 1;
        let powered = wreath_power(&a, rv, g);
        if powered != closed_form_power(&a, rv, g) {
            report.fail(format!("closed form power differs for {a:?}"));
        }
        let expected = power_type(&element_type(&a, cs), r, cs)?;
        let actual = element_type(&powered, cs);
        if expected != actual {
            report.fail(format!(
                "{a:?}: type of power {actual}, predicted {expected}"
            ));
        }
    }
    Ok(report)
}

fn generators(g: &GroupModel, n: usize) -> Vec<WreathElement> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    for x in 1..g.order() {
        let mut e = WreathElement::identity(n);
        e.f[0] = x;
        gens.push(e);
    }
    if n >= 2 {
        let mut swap = WreathElement::identity(n);
        swap.pi.swap(0, 1);
        gens.push(swap);
        let mut cycle = WreathElement::identity(n);
        cycle.pi = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(cycle);
    }
    gens
}

/// Splits the group into conjugation orbits and checks that they coincide
/// with the grouping by type and that each orbit has the size predicted by
/// the centralizer formula.
pub fn verify_conjugacy_types(cs: &ClassStructure, n: u32) -> Result<OracleReport> {
    let g = cs.group();
    let order = g.order() as u64;
    let elements = all_elements(g, n)?;
    let gens: Vec<(WreathElement, WreathElement)> = generators(g, n as usize)
        .into_iter()
        .map(|x| {
            let xi = wreath_inverse(&x, g);
            (x, xi)
        })
        .collect();

    let mut orbit_of: HashMap<u64, usize> = HashMap::with_capacity(elements.len());
    let mut orbits: Vec<Vec<WreathElement>> = Vec::new();
    for a in &elements {
        if orbit_of.contains_key(&a.encode(order)) {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![a.clone()];
        orbit_of.insert(a.encode(order), id);
        let mut queue = VecDeque::from([a.clone()]);
        while let Some(y) = queue.pop_front() {
            for (x, xi) in &gens {
                let c = mul_unchecked(&mul_unchecked(x, &y, g), xi, g);
                let code = c.encode(order);
                if let std::collections::hash_map::Entry::Vacant(v) = orbit_of.entry(code) {
                    v.insert(id);
                    orbit.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        orbits.push(orbit);
    }

    let mut report = OracleReport::default();
    let mut type_to_orbit: HashMap<TypeMatrix, usize> = HashMap::new();
    for (id, orbit) in orbits.iter().enumerate() {
        report.checked += orbit.len() as u64;
        let t = element_type(&orbit[0], cs);
        if let Some(y) = orbit.iter().find(|y| element_type(y, cs) != t) {
            report.fail(format!(
                "orbit {id} mixes types {t} and {}",
                element_type(y, cs)
            ));
        }
        for rotate in 1..3 {
            if element_type_from(&orbit[0], cs, rotate) != t {
                report.fail(format!("type of {:?} depends on the cycle start", orbit[0]));
            }
        }
        if let Some(other) = type_to_orbit.insert(t.clone(), id) {
            report.fail(format!("orbits {other} and {id} share type {t}"));
        }
        let predicted = class_info(&t, cs).class_size;
        if predicted != BigUint::from(orbit.len()) {
            report.fail(format!(
                "type {t}: orbit size {}, predicted {predicted}",
                orbit.len()
            ));
        }
    }
    if BigUint::from(orbits.len()) != count_classes(cs.num_classes(), n) {
        report.fail(format!(
            "{} orbits, but the class count is {}",
            orbits.len(),
            count_classes(cs.num_classes(), n)
        ));
    }
    Ok(report)
}

/// Both inclusions of the power-class characterization: the types of actual
/// r-th powers are exactly the types passing the divisibility test; the
/// class-level image of the power map on types is the same set; and the
/// constructed root type of each passing type powers back to it.
pub fn verify_power_characterization(
    cs: &ClassStructure,
    n: u32,
    r: Prime,
) -> Result<OracleReport> {
    let lab = nonpower_classes(cs, r);
    let types = enumerate_types(cs.num_classes(), n);
    let passing: BTreeSet<Vec<u32>> = types
        .iter()
        .filter(|t| is_rth_power_type(t, &lab))
        .map(TypeMatrix::to_dense)
        .collect();
    let mut report = OracleReport {
        checked: types.len() as u64,
        failures: vec![],
    };

    let observed = power_image_types(cs, n, r.get() as u64)?;
    if observed != passing {
        report.fail(format!(
            "elementwise power types ({}) differ from the divisibility test ({})",
            observed.len(),
            passing.len()
        ));
    }
    let mut image = BTreeSet::new();
    for t in &types {
        image.insert(power_type(t, r, cs)?.to_dense());
    }
    if image != passing {
        report.fail(format!(
            "class-level image ({}) differs from the divisibility test ({})",
            image.len(),
            passing.len()
        ));
    }
    for t in types.iter().filter(|t| is_rth_power_type(t, &lab)) {
        let root = preimage_type(t, &lab)?;
        if power_type(&root, r, cs)? != *t {
            report.fail(format!("root {root} of {t} does not power back"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{catalog_group, conjugacy_classes, CatalogKind};

    fn group(kind: CatalogKind, m: u32) -> GroupModel {
        catalog_group(kind, m).unwrap()
    }

    #[test]
    fn identity_laws_and_inverses() {
        let g = group(CatalogKind::Cyclic, 2);
        let id = WreathElement::identity(2);
        assert_eq!(wreath_multiply(&id, &id, &g).unwrap(), id);
        for a in all_elements(&g, 2).unwrap() {
            assert_eq!(
                wreath_multiply(&a, &wreath_inverse(&a, &g), &g).unwrap(),
                id
            );
            assert_eq!(
                wreath_multiply(&wreath_inverse(&a, &g), &a, &g).unwrap(),
                id
            );
        }
        let bad = WreathElement::identity(3);
        assert!(wreath_multiply(&id, &bad, &g).is_err());
    }

    #[test]
    fn exhaustive_associativity_small() {
        let g = group(CatalogKind::Symmetric, 3);
        let els = all_elements(&g, 2).unwrap();
        assert_eq!(els.len(), 72);
        // every third element keeps this at ~14k triples
        for a in els.iter().step_by(3) {
            for b in els.iter().step_by(2) {
                for c in els.iter().step_by(5) {
                    let l = mul_unchecked(&mul_unchecked(a, b, &g), c, &g);
                    let r = mul_unchecked(a, &mul_unchecked(b, c, &g), &g);
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn powers_agree_and_orders_divide_group_order() {
        let g = group(CatalogKind::Cyclic, 2);
        for a in all_elements(&g, 2).unwrap() {
            assert_eq!(wreath_power(&a, 1, &g), a);
            assert_eq!(wreath_power(&a, 2, &g), closed_form_power(&a, 2, &g));
            assert_eq!(wreath_power(&a, 8, &g), WreathElement::identity(2));
        }
    }

    #[test]
    fn type_tally_of_hyperoctahedral_group() {
        let cs = conjugacy_classes(&group(CatalogKind::Cyclic, 2));
        let mut tally: HashMap<String, u32> = HashMap::new();
        for a in all_elements(cs.group(), 2).unwrap() {
            *tally.entry(element_type(&a, &cs).to_string()).or_default() += 1;
        }
        let mut sizes: Vec<u32> = tally.values().copied().collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(
            element_type(&WreathElement::identity(2), &cs).to_string(),
            "2,0;0,0"
        );
    }

    #[test]
    fn image_counts() {
        let c3 = group(CatalogKind::Cyclic, 3);
        assert_eq!(power_image_count(&c3, 3, 2).unwrap(), 81);
        assert_eq!(
            power_image_count(&group(CatalogKind::Cyclic, 2), 3, 2).unwrap(),
            12
        );
        assert_eq!(
            power_image_count(&group(CatalogKind::Trivial, 1), 4, 6).unwrap(),
            4
        );
    }

    #[test]
    fn guard() {
        let s6 = group(CatalogKind::Symmetric, 6);
        assert!(matches!(
            power_image_count(&s6, 3, 2),
            Err(Error::GuardExceeded { .. })
        ));
        assert_eq!(
            guarded_size(&group(CatalogKind::Cyclic, 3), 3).unwrap(),
            162
        );
    }

    #[test]
    fn power_type_and_conjugacy_checks_small() {
        let cs = conjugacy_classes(&group(CatalogKind::Cyclic, 2));
        let two = Prime::new(2).unwrap();
        let rep = verify_power_types(&cs, 3, two).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.checked, 48);
        let rep = verify_conjugacy_types(&cs, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.checked, 8);
    }
}
