//! Conjugacy types of G wr S_n: enumeration, class sizes, the r-th power
//! map on types, the r-th power test with an explicit root type, and the
//! class-level counts and probabilities that follow from them.
//!
//! A type is an `s x n` matrix whose entry `(i, j)` counts the `j`-cycles of
//! the permutation part whose cycle product lies in G-class `i`. Rows use the
//! canonical class order of [`ClassStructure`]; columns are cycle lengths
//! `1..=n`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factorial, gcd, ratio, wreath_order, Prime};
use crate::error::{Error, Result};
use crate::groups::{nonpower_classes, ClassLabeling, ClassStructure};
use crate::partitions::{count_p, count_p_r, count_p_r_prime, partitions_of, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeMatrix {
    s: usize,
    n: u32,
    entries: BTreeMap<(usize, u32), u32>,
}

impl TypeMatrix {
    /// Builds a type from `((row, column), count)` triples; zero counts are
    /// dropped and repeated cells accumulate.
    pub fn new<I>(s: usize, n: u32, cells: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, u32), u32)>,
    {
        let mut entries = BTreeMap::new();
        let mut weight = 0u64;
        for ((i, j), a) in cells {
            if i >= s || j == 0 || j > n {
                return Err(Error::Dimension(format!(
                    "cell ({i}, {j}) outside a {s}x{n} type"
                )));
            }
            if a == 0 {
                continue;
            }
            *entries.entry((i, j)).or_insert(0) += a;
            weight += j as u64 * a as u64;
        }
        if weight != n as u64 {
            return Err(Error::Input(format!(
                "type has weight {weight}, expected {n}"
            )));
        }
        Ok(TypeMatrix { s, n, entries })
    }

    /// Row-major dense entries, `s` rows of `n` columns.
    pub fn from_dense(s: usize, n: u32, dense: &[u32]) -> Result<Self> {
        if dense.len() != s * n as usize {
            return Err(Error::Dimension(format!(
                "{} dense entries for a {s}x{n} type",
                dense.len()
            )));
        }
        let cells = dense
            .iter()
            .enumerate()
            .map(|(k, &a)| ((k / n as usize, (k % n as usize) as u32 + 1), a));
        Self::new(s, n, cells)
    }

    /// The type whose only entry is `n` fixed points in `class`.
    pub fn identity(s: usize, n: u32, class: usize) -> Self {
        Self::new(s, n, [((class, 1), n)]).expect("identity type")
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, i: usize, j: u32) -> u32 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero cells as `((row, column), count)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), u32)> + '_ {
        self.entries.iter().map(|(&k, &a)| (k, a))
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let n = self.n as usize;
        let mut dense = vec![0; self.s * n];
        for (&(i, j), &a) in &self.entries {
            dense[i * n + j as usize - 1] = a;
        }
        dense
    }

    /// Row `i` read as a partition of its weight.
    pub fn row_partition(&self, i: usize) -> Partition {
        Partition::from_mults(
            self.entries()
                .filter(|((k, _), _)| *k == i)
                .map(|((_, j), a)| (j, a)),
        )
        .expect("positive columns")
    }

    /// Cycle type of the permutation part.
    pub fn perm_type(&self) -> Partition {
        Partition::from_mults(self.entries().map(|((_, j), a)| (j, a))).expect("positive columns")
    }
}

impl fmt::Display for TypeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as usize;
        let dense = self.to_dense();
        let rows: Vec<String> = (0..self.s)
            .map(|i| {
                let row: Vec<String> = dense[i * n..(i + 1) * n]
                    .iter()
                    .map(u32::to_string)
                    .collect();
                row.join(",")
            })
            .collect();
        f.write_str(&rows.join(";"))
    }
}

impl FromStr for TypeMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let rows: Vec<Vec<u32>> = text
            .trim()
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim()
                            .parse()
                            .map_err(|_| Error::Input(format!("bad type entry {e:?}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("type rows have different lengths".into()));
        }
        let dense: Vec<u32> = rows.concat();
        TypeMatrix::from_dense(rows.len(), n as u32, &dense)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathClassInfo {
    pub class_type: TypeMatrix,
    pub centralizer_size: BigUint,
    pub class_size: BigUint,
    pub class_probability: BigRational,
}

fn compositions(n: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every conjugacy type of G wr S_n for a group with `s` classes, in
/// decreasing lexicographic order of the dense row-major reading (so the
/// identity type comes first).
pub fn enumerate_types(s: usize, n: u32) -> Vec<TypeMatrix> {
    let mut out = Vec::new();
    assert!(s >= 1, "a group has at least one class");
    for comp in compositions(n, s) {
        let rows: Vec<Vec<Partition>> = comp.iter().map(|&k| partitions_of(k).collect()).collect();
        let mut pick = vec![0usize; s];
        'odometer: loop {
            let cells = pick
                .iter()
                .enumerate()
                .flat_map(|(i, &k)| rows[i][k].mults().map(move |(j, a)| ((i, j), a)));
            out.push(TypeMatrix::new(s, n, cells).expect("weights add to n"));
            let mut i = s;
            loop {
                if i == 0 {
                    break 'odometer;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < rows[i].len() {
                    continue 'odometer;
                }
                pick[i] = 0;
            }
        }
    }
    out.sort_by_cached_key(|t| Reverse(t.to_dense()));
    out
}

/// Order of the centralizer of an element of type `t`:
/// the product over cells of `a! * (j |G| / |C_i|)^a`.
pub fn centralizer_size(t: &TypeMatrix, sizes: &[u64], group_order: u64) -> BigUint {
    t.entries().fold(BigUint::one(), |acc, ((i, j), a)| {
        let base = j as u64 * group_order / sizes[i];
        acc * factorial(a as u64) * BigUint::from(base).pow(a)
    })
}

pub fn class_info(t: &TypeMatrix, cs: &ClassStructure) -> WreathClassInfo {
    let total = wreath_order(cs.group_order(), t.n());
    let centralizer = centralizer_size(t, &cs.sizes(), cs.group_order());
    let class_size = &total / &centralizer;
    WreathClassInfo {
        class_type: t.clone(),
        class_probability: ratio(&class_size, &total),
        centralizer_size: centralizer,
        class_size,
    }
}

fn check_dims(t: &TypeMatrix, cs: &ClassStructure) -> Result<()> {
    if t.s() != cs.num_classes() {
        return Err(Error::Dimension(format!(
            "type has {} rows but the group has {} classes",
            t.s(),
            cs.num_classes()
        )));
    }
    Ok(())
}

/// Type of `g^r` from the type of `g`.
///
/// A `j`-cycle with `r` not dividing `j` stays a `j`-cycle and its cycle
/// product is raised to the `r`-th power; an `rj`-cycle splits into `r`
/// cycles of length `j` whose products stay in the same class.
pub fn power_type(t: &TypeMatrix, r: Prime, cs: &ClassStructure) -> Result<TypeMatrix> {
    check_dims(t, cs)?;
    let map = cs.power_map(r.get() as u64);
    let rv = r.get();
    let cells = t.entries().map(|((i, j), a)| {
        if j % rv == 0 {
            ((i, j / rv), rv * a)
        } else {
            ((map[i], j), a)
        }
    });
    TypeMatrix::new(t.s(), t.n(), cells)
}

/// Whether the class of type `t` consists of r-th powers: entries in
/// columns divisible by `r`, and all entries in rows of non-power classes,
/// must be divisible by `r`.
pub fn is_rth_power_type(t: &TypeMatrix, lab: &ClassLabeling) -> bool {
    let r = lab.prime().get();
    t.entries()
        .all(|((i, j), a)| !(j % r == 0 || !lab.is_power_class(i)) || a % r == 0)
}

/// A type whose r-th power is `t`.
///
/// Cells in columns not divisible by `r` and in power-class rows move to
/// the least root class of their row; every other cell is divided by `r`
/// and moved to column `r * j`.
pub fn preimage_type(t: &TypeMatrix, lab: &ClassLabeling) -> Result<TypeMatrix> {
    if !is_rth_power_type(t, lab) {
        return Err(Error::Precondition(format!(
            "type {t} is not an r-th power type"
        )));
    }
    let r = lab.prime().get();
    let cells = t.entries().map(|((i, j), a)| {
        if j % r != 0 && lab.is_power_class(i) {
            ((lab.least_root(i).expect("power class has a root"), j), a)
        } else {
            ((i, r * j), a / r)
        }
    });
    TypeMatrix::new(t.s(), t.n(), cells)
}

/// Sum over ordered tuples `(n_1, .., n_k)` with total `n` of the products
/// `f_1(n_1) ... f_k(n_k)`.
fn composition_sum(factors: &[Vec<BigUint>], n: u32) -> BigUint {
    let n = n as usize;
    let mut acc = vec![BigUint::zero(); n + 1];
    acc[0] = BigUint::one();
    for f in factors {
        let mut next = vec![BigUint::zero(); n + 1];
        for (a, x) in acc.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for b in 0..=(n - a) {
                next[a + b] += x * &f[b];
            }
        }
        acc = next;
    }
    acc.swap_remove(n)
}

/// Number of conjugacy classes of G wr S_n for a group with `s` classes.
pub fn count_classes(s: usize, n: u32) -> BigUint {
    let p: Vec<BigUint> = (0..=n).map(count_p).collect();
    composition_sum(&vec![p; s], n)
}

/// Number of r-th power classes from the partition-count product formula,
/// with `p_r` on the non-power rows and `p_r'` on the others.
pub fn count_power_classes_formula(cs: &ClassStructure, n: u32, r: Prime) -> BigUint {
    let d = nonpower_classes(cs, r).d();
    let pr: Vec<BigUint> = (0..=n).map(|k| count_p_r(k, r)).collect();
    let prp: Vec<BigUint> = (0..=n).map(|k| count_p_r_prime(k, r)).collect();
    let mut factors = vec![pr; d];
    factors.extend(std::iter::repeat_n(prp, cs.num_classes() - d));
    composition_sum(&factors, n)
}

/// Types of the r-th power classes, in enumeration order.
pub fn power_classes(cs: &ClassStructure, n: u32, r: Prime) -> Vec<TypeMatrix> {
    let lab = nonpower_classes(cs, r);
    enumerate_types(cs.num_classes(), n)
        .into_iter()
        .filter(|t| is_rth_power_type(t, &lab))
        .collect()
}

/// `|{g^r : g in G wr S_n}|`, summed over the power classes.
pub fn count_power_elements(cs: &ClassStructure, n: u32, r: Prime) -> BigUint {
    power_classes(cs, n, r)
        .iter()
        .map(|t| class_info(t, cs).class_size)
        .sum()
}

/// Proportion of r-th powers in G wr S_n. Degree 0 gives 1.
pub fn prob_r_wreath(cs: &ClassStructure, n: u32, r: Prime) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    ratio(
        &count_power_elements(cs, n, r),
        &wreath_order(cs.group_order(), n),
    )
}

/// Coefficients of the cycle index: each type with the probability of its
/// class.
pub fn cycle_index_polynomial(cs: &ClassStructure, n: u32) -> Vec<(TypeMatrix, BigRational)> {
    enumerate_types(cs.num_classes(), n)
        .into_iter()
        .map(|t| {
            let p = class_info(&t, cs).class_probability;
            (t, p)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlateauRow {
    pub n: u32,
    pub prob_n: BigRational,
    pub prob_next: BigRational,
}

impl PlateauRow {
    pub fn holds(&self) -> bool {
        self.prob_n == self.prob_next
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlateauReport {
    pub r: Prime,
    pub rows: Vec<PlateauRow>,
}

impl PlateauReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(PlateauRow::holds)
    }
}

/// Checks `P_r(G wr S_{n+1}) = P_r(G wr S_n)` for every `1 <= n <= n_max`
/// with `n` not congruent to `-1` mod `r`. Refused unless `gcd(r, |G|) = 1`.
pub fn verify_plateau(cs: &ClassStructure, r: Prime, n_max: u32) -> Result<PlateauReport> {
    let rv = r.get() as u64;
    if gcd(rv, cs.group_order()) != 1 {
        return Err(Error::Hypothesis(format!(
            "gcd({rv}, |G|) = gcd({rv}, {}) != 1",
            cs.group_order()
        )));
    }
    let probs: Vec<BigRational> = (0..=n_max + 1).map(|k| prob_r_wreath(cs, k, r)).collect();
    let rows = (1..=n_max)
        .filter(|&n| !(n as u64 + 1).is_multiple_of(rv))
        .map(|n| PlateauRow {
            n,
            prob_n: probs[n as usize].clone(),
            prob_next: probs[n as usize + 1].clone(),
        })
        .collect();
    Ok(PlateauReport { r, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{catalog_group, conjugacy_classes, CatalogKind};

    fn cs(kind: CatalogKind, m: u32) -> ClassStructure {
        conjugacy_classes(&catalog_group(kind, m).unwrap())
    }

    fn two() -> Prime {
        Prime::new(2).unwrap()
    }

    fn t(s: &str) -> TypeMatrix {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        let x10 = t("1,0,0;1,0,0;1,0,0");
        assert_eq!(x10.s(), 3);
        assert_eq!(x10.n(), 3);
        assert_eq!(x10.to_string(), "1,0,0;1,0,0;1,0,0");
        assert!("1,0;1".parse::<TypeMatrix>().is_err());
        assert!("1,1".parse::<TypeMatrix>().is_err());
        assert_eq!(x10.perm_type().to_string(), "1^3");
    }

    #[test]
    fn enumeration_of_two_by_two() {
        let types: Vec<String> = enumerate_types(2, 2)
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(
            types,
            ["2,0;0,0", "1,0;1,0", "0,1;0,0", "0,0;2,0", "0,0;0,1"]
        );
        assert_eq!(enumerate_types(3, 3).len(), 22);
        for n in 1..=6 {
            assert_eq!(BigUint::from(enumerate_types(1, n).len()), count_p(n));
        }
    }

    #[test]
    fn enumeration_matches_count() {
        for s in 1..=4 {
            for n in 1..=7 {
                assert_eq!(
                    BigUint::from(enumerate_types(s, n).len()),
                    count_classes(s, n)
                );
            }
        }
        assert_eq!(count_classes(3, 0), BigUint::one());
    }

    #[test]
    fn centralizers_in_hyperoctahedral_group() {
        let c2 = cs(CatalogKind::Cyclic, 2);
        let info = class_info(&t("1,0;1,0"), &c2);
        assert_eq!(info.centralizer_size, 4u32.into());
        assert_eq!(info.class_size, 2u32.into());
        let id = class_info(&TypeMatrix::identity(2, 2, 0), &c2);
        assert_eq!(id.class_size, BigUint::one());
        assert_eq!(id.centralizer_size, 8u32.into());
    }

    #[test]
    fn transposition_two_cycle_in_s3_wreath_s2() {
        let s3 = cs(CatalogKind::Symmetric, 3);
        // class 1 holds the transpositions
        let info = class_info(&t("0,0;0,1;0,0"), &s3);
        assert_eq!(info.class_size, 18u32.into());
    }

    #[test]
    fn power_of_fixed_point_and_transposition() {
        let c3 = cs(CatalogKind::Cyclic, 3);
        let x11 = t("1,1,0;0,0,0;0,0,0");
        assert_eq!(
            power_type(&x11, two(), &c3).unwrap(),
            TypeMatrix::identity(3, 3, 0)
        );
        // columns prime to r permute rows through the inverse power map
        let x = t("2,0,0;1,0,0;0,0,0");
        assert_eq!(power_type(&x, two(), &c3).unwrap(), t("2,0,0;0,0,0;1,0,0"));
        let wrong = TypeMatrix::identity(2, 3, 0);
        assert!(matches!(
            power_type(&wrong, two(), &c3),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn power_class_counts() {
        let c3 = cs(CatalogKind::Cyclic, 3);
        let s3 = cs(CatalogKind::Symmetric, 3);
        assert_eq!(power_classes(&c3, 3, two()).len(), 13);
        assert_eq!(power_classes(&s3, 3, two()).len(), 8);
        assert_eq!(count_power_classes_formula(&s3, 3, two()), 8u32.into());
        assert_eq!(count_power_classes_formula(&c3, 3, two()), 13u32.into());
        assert_eq!(count_power_elements(&c3, 3, two()), 81u32.into());
        assert_eq!(count_power_elements(&s3, 3, two()), 324u32.into());
        assert_eq!(count_power_elements(&c3, 4, two()), 810u32.into());
        assert_eq!(
            prob_r_wreath(&c3, 3, two()),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn preimage_round_trip_and_precondition() {
        let s3 = cs(CatalogKind::Symmetric, 3);
        let lab = nonpower_classes(&s3, two());
        for ty in power_classes(&s3, 3, two()) {
            let root = preimage_type(&ty, &lab).unwrap();
            assert_eq!(power_type(&root, two(), &s3).unwrap(), ty);
        }
        let non_square = t("0,0,0;1,1,0;0,0,0");
        assert!(matches!(
            preimage_type(&non_square, &lab),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cycle_index_of_hyperoctahedral_group() {
        let c2 = cs(CatalogKind::Cyclic, 2);
        let eighth = |k: i64| BigRational::new(k.into(), 8.into());
        let poly: Vec<(String, BigRational)> = cycle_index_polynomial(&c2, 2)
            .into_iter()
            .map(|(t, p)| (t.to_string(), p))
            .collect();
        assert_eq!(
            poly,
            vec![
                ("2,0;0,0".to_string(), eighth(1)),
                ("1,0;1,0".to_string(), eighth(2)),
                ("0,1;0,0".to_string(), eighth(2)),
                ("0,0;2,0".to_string(), eighth(1)),
                ("0,0;0,1".to_string(), eighth(2)),
            ]
        );
    }

    #[test]
    fn plateau_gate() {
        let c2 = cs(CatalogKind::Cyclic, 2);
        assert!(matches!(
            verify_plateau(&c2, two(), 4),
            Err(Error::Hypothesis(_))
        ));
        let c3 = cs(CatalogKind::Cyclic, 3);
        let rep = verify_plateau(&c3, two(), 6).unwrap();
        assert!(rep.passed());
        assert_eq!(
            rep.rows.iter().map(|r| r.n).collect::<Vec<_>>(),
            vec![2, 4, 6]
        );
    }
}
