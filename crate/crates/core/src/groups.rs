//! Finite groups given by a full multiplication table, their conjugacy
//! classes, and the class-level power map.
//!
//! Elements are indices `0..order`. Element `0` is always the identity.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::arith::Prime;
use crate::error::{Error, Result};

/// Largest degree accepted for the symmetric-group catalog entry (order 720).
pub const MAX_SYMMETRIC_DEGREE: u32 = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupModel {
    labels: Vec<String>,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl GroupModel {
    /// Validates a row-by-column multiplication table (`table[a * m + b]` is
    /// `a * b`) whose first element is the identity.
    pub fn from_table(labels: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::InvalidGroup(
                "group must have at least one element".into(),
            ));
        }
        if table.len() != m * m {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                m * m
            )));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::InvalidGroup(format!(
                    "duplicate element name {l:?} at positions {} and {}",
                    j + 1,
                    i + 1
                )));
            }
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= m) {
            return Err(Error::InvalidGroup(format!(
                "entry index {bad} out of range"
            )));
        }
        for a in 0..m {
            if table[a * m] != a {
                return Err(Error::InvalidGroup(format!(
                    "identity {:?} is not a right identity: {}*{} = {}",
                    labels[0],
                    labels[a],
                    labels[0],
                    labels[table[a * m]]
                )));
            }
            if table[a] != a {
                return Err(Error::InvalidGroup(format!(
                    "identity {:?} is not a left identity: {}*{} = {}",
                    labels[0], labels[0], labels[a], labels[table[a]]
                )));
            }
        }
        for a in 0..m {
            let row: BTreeSet<usize> = (0..m).map(|b| table[a * m + b]).collect();
            if row.len() != m {
                return Err(Error::InvalidGroup(format!(
                    "row {:?} is not a permutation of the elements",
                    labels[a]
                )));
            }
            let col: BTreeSet<usize> = (0..m).map(|b| table[b * m + a]).collect();
            if col.len() != m {
                return Err(Error::InvalidGroup(format!(
                    "column {:?} is not a permutation of the elements",
                    labels[a]
                )));
            }
        }
        let mut inverse = vec![usize::MAX; m];
        for a in 0..m {
            let b = (0..m)
                .find(|&b| table[b * m + a] == 0)
                .expect("latin column");
            if table[a * m + b] != 0 {
                return Err(Error::InvalidGroup(format!(
                    "element {:?} has no two-sided inverse",
                    labels[a]
                )));
            }
            inverse[a] = b;
        }
        for a in 0..m {
            for b in 0..m {
                let ab = table[a * m + b];
                for c in 0..m {
                    let bc = table[b * m + c];
                    if table[ab * m + c] != table[a * m + bc] {
                        return Err(Error::NonAssociative {
                            a: labels[a].clone(),
                            b: labels[b].clone(),
                            c: labels[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(GroupModel {
            labels,
            table,
            inverse,
        })
    }

    // Used by the catalog, whose tables are correct by construction.
    fn from_trusted(labels: Vec<String>, table: Vec<usize>) -> Self {
        let m = labels.len();
        let inverse = (0..m)
            .map(|a| {
                (0..m)
                    .find(|&b| table[a * m + b] == 0)
                    .expect("group inverse")
            })
            .collect();
        GroupModel {
            labels,
            table,
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, x: usize, mut e: u64) -> usize {
        let mut acc = self.identity();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.order();
        (0..m).all(|a| (0..m).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Serializes in the group file format accepted by [`build_from_cayley`].
    pub fn to_cayley_text(&self) -> String {
        let m = self.order();
        let mut out = String::new();
        let _ = writeln!(out, "{m}");
        let _ = writeln!(out, "{}", self.labels.join(" "));
        for a in 0..m {
            let row: Vec<&str> = (0..m).map(|b| self.label(self.mul(a, b))).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// Parses the text group file format: `m`, then the `m` element names
/// (identity first), then `m` rows of `m` names where row `g`, column `k`
/// holds `g*k`. Lines starting with `#` and blank lines are ignored.
pub fn build_from_cayley(text: &str) -> Result<GroupModel> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "empty group file".into(),
    })?;
    let m: usize = header.parse().map_err(|_| Error::Parse {
        line,
        message: format!("expected group order, found {header:?}"),
    })?;
    if m == 0 {
        return Err(Error::Parse {
            line,
            message: "group order must be positive".into(),
        });
    }

    let (line, names) = lines.next().ok_or(Error::Parse {
        line,
        message: "missing element names".into(),
    })?;
    let labels: Vec<String> = names.split_whitespace().map(str::to_owned).collect();
    if labels.len() != m {
        return Err(Error::Parse {
            line,
            message: format!("expected {m} element names, found {}", labels.len()),
        });
    }
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    if index.len() != m {
        return Err(Error::Parse {
            line,
            message: "element names are not distinct".into(),
        });
    }

    let mut table = Vec::with_capacity(m * m);
    for row in 0..m {
        let (line, text) = lines.next().ok_or(Error::Parse {
            line,
            message: format!("missing table row for {:?}", labels[row]),
        })?;
        let entries: Vec<&str> = text.split_whitespace().collect();
        if entries.len() != m {
            return Err(Error::Parse {
                line,
                message: format!(
                    "row {:?} has {} entries, expected {m}",
                    labels[row],
                    entries.len()
                ),
            });
        }
        for (col, e) in entries.iter().enumerate() {
            let &x = index.get(e).ok_or_else(|| Error::Parse {
                line,
                message: format!(
                    "unknown element {e:?} at row {:?}, column {:?}",
                    labels[row], labels[col]
                ),
            })?;
            table.push(x);
        }
    }
    if let Some((line, extra)) = lines.next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected trailing content {extra:?}"),
        });
    }
    GroupModel::from_table(labels, table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogKind {
    Trivial,
    Cyclic,
    Symmetric,
    Dihedral,
}

pub fn catalog_group(kind: CatalogKind, m: u32) -> Result<GroupModel> {
    if m == 0 {
        return Err(Error::Catalog(format!("{kind:?} group needs m >= 1")));
    }
    match kind {
        CatalogKind::Trivial => Ok(cyclic(1)),
        CatalogKind::Cyclic => Ok(cyclic(m as usize)),
        CatalogKind::Dihedral => Ok(dihedral(m as usize)),
        CatalogKind::Symmetric if m <= MAX_SYMMETRIC_DEGREE => Ok(symmetric(m as usize)),
        CatalogKind::Symmetric => Err(Error::Catalog(format!(
            "symmetric group S{m} exceeds the supported degree {MAX_SYMMETRIC_DEGREE}"
        ))),
    }
}

fn cyclic(m: usize) -> GroupModel {
    let labels = (0..m)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{k}"),
        })
        .collect();
    let table = (0..m * m).map(|ab| (ab / m + ab % m) % m).collect();
    GroupModel::from_trusted(labels, table)
}

// r^k s^e is stored at index k + e*m; s r s = r^-1.
fn dihedral(m: usize) -> GroupModel {
    let rot = |k: usize| match k {
        0 => String::new(),
        1 => "r".to_string(),
        _ => format!("r^{k}"),
    };
    let mut labels = Vec::with_capacity(2 * m);
    for e in 0..2 {
        for k in 0..m {
            let l = format!("{}{}", rot(k), if e == 1 { "s" } else { "" });
            labels.push(if l.is_empty() { "e".to_string() } else { l });
        }
    }
    let n = 2 * m;
    let mut table = vec![0; n * n];
    for a in 0..n {
        let (ka, ea) = (a % m, a / m);
        for b in 0..n {
            let (kb, eb) = (b % m, b / m);
            let k = if ea == 0 {
                (ka + kb) % m
            } else {
                (ka + m - kb) % m
            };
            table[a * n + b] = k + ((ea + eb) % 2) * m;
        }
    }
    GroupModel::from_trusted(labels, table)
}

pub(crate) fn lex_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    loop {
        out.push(p.clone());
        // next permutation in lexicographic order
        let Some(i) = (1..m).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..m).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            let _ = write!(out, "{}", x + 1);
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".to_string()
    } else {
        out
    }
}

// (a*b)(x) = a(b(x)).
fn symmetric(m: usize) -> GroupModel {
    let perms = lex_permutations(m);
    let index: HashMap<Vec<usize>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let n = perms.len();
    let mut table = vec![0; n * n];
    for (a, pa) in perms.iter().enumerate() {
        for (b, pb) in perms.iter().enumerate() {
            let prod: Vec<usize> = (0..m).map(|x| pa[pb[x]]).collect();
            table[a * n + b] = index[&prod];
        }
    }
    let labels = perms.iter().map(|p| cycle_label(p)).collect();
    GroupModel::from_trusted(labels, table)
}

/// Conjugacy classes of a group together with the group they describe.
///
/// Classes are ordered by their least member; members are sorted ascending,
/// so class 0 is always the identity class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStructure {
    group: GroupModel,
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

pub fn conjugacy_classes(g: &GroupModel) -> ClassStructure {
    let m = g.order();
    let mut class_of = vec![usize::MAX; m];
    let mut members = Vec::new();
    for x in 0..m {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = members.len();
        let orbit: BTreeSet<usize> = (0..m).map(|y| g.mul(g.mul(y, x), g.inv(y))).collect();
        for &z in &orbit {
            class_of[z] = id;
        }
        members.push(orbit.into_iter().collect());
    }
    ClassStructure {
        group: g.clone(),
        class_of,
        members,
    }
}

impl ClassStructure {
    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn group_order(&self) -> u64 {
        self.group.order() as u64
    }

    pub fn num_classes(&self) -> usize {
        self.members.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.members.iter().map(|c| c.len() as u64).collect()
    }

    pub fn representative(&self, class: usize) -> usize {
        self.members[class][0]
    }

    pub fn representatives(&self) -> Vec<usize> {
        (0..self.num_classes())
            .map(|c| self.representative(c))
            .collect()
    }

    pub fn identity_class(&self) -> usize {
        self.class_of[self.group.identity()]
    }

    /// Class index of `x^m` for `x` in each class, read off the representative.
    pub fn power_map(&self, m: u64) -> Vec<usize> {
        self.representatives()
            .into_iter()
            .map(|x| self.class_of[self.group.pow(x, m)])
            .collect()
    }

    /// Same as [`power_map`](Self::power_map) but evaluated on every member,
    /// failing if two members of one class land in different classes.
    pub fn power_map_checked(&self, m: u64) -> Result<Vec<usize>> {
        let map = self.power_map(m);
        for (c, mem) in self.members.iter().enumerate() {
            if let Some(&x) = mem
                .iter()
                .find(|&&x| self.class_of[self.group.pow(x, m)] != map[c])
            {
                return Err(Error::InvalidGroup(format!(
                    "power map {m} is not constant on the class of {}: {} breaks it",
                    self.group.label(self.representative(c)),
                    self.group.label(x)
                )));
            }
        }
        Ok(map)
    }

    pub fn class_name(&self, class: usize) -> &str {
        self.group.label(self.representative(class))
    }
}

/// Class order with the non-r-th-power classes first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLabeling {
    r: Prime,
    order: Vec<usize>,
    d: usize,
    power_map: Vec<usize>,
    is_power: Vec<bool>,
}

pub fn nonpower_classes(cs: &ClassStructure, r: Prime) -> ClassLabeling {
    let power_map = cs.power_map(r.get() as u64);
    let mut is_power = vec![false; cs.num_classes()];
    for &c in &power_map {
        is_power[c] = true;
    }
    let (mut order, powers): (Vec<usize>, Vec<usize>) =
        (0..cs.num_classes()).partition(|&c| !is_power[c]);
    let d = order.len();
    order.extend(powers);
    ClassLabeling {
        r,
        order,
        d,
        power_map,
        is_power,
    }
}

impl ClassLabeling {
    pub fn prime(&self) -> Prime {
        self.r
    }

    /// Number of classes that are not r-th powers.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Canonical class indices, non-power classes first.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn nonpower(&self) -> &[usize] {
        &self.order[..self.d]
    }

    pub fn is_power_class(&self, class: usize) -> bool {
        self.is_power[class]
    }

    pub fn power_map(&self) -> &[usize] {
        &self.power_map
    }

    /// The least class whose r-th power is `class`.
    pub fn least_root(&self, class: usize) -> Option<usize> {
        self.power_map.iter().position(|&c| c == class)
    }
}

/// Exhaustively decides whether `x -> x^m` is onto.
pub fn is_power_surjective(g: &GroupModel, m: u64) -> bool {
    let image: BTreeSet<usize> = (0..g.order()).map(|x| g.pow(x, m)).collect();
    image.len() == g.order()
}

/// A group reference: catalog `1`, `C:m`, `S:m`, `D:m`, or a path to a
/// group file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Catalog(CatalogKind, u32),
    File(String),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "1" {
            return Ok(GroupSpec::Catalog(CatalogKind::Trivial, 1));
        }
        if let Some((k, m)) = s.split_once(':') {
            let kind = match k {
                "C" => Some(CatalogKind::Cyclic),
                "S" => Some(CatalogKind::Symmetric),
                "D" => Some(CatalogKind::Dihedral),
                _ => None,
            };
            if let Some(kind) = kind {
                let m = m
                    .parse()
                    .map_err(|_| Error::Input(format!("bad catalog parameter in {s:?}")))?;
                return Ok(GroupSpec::Catalog(kind, m));
            }
        }
        Ok(GroupSpec::File(s.to_string()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Catalog(CatalogKind::Trivial, _) => f.write_str("1"),
            GroupSpec::Catalog(CatalogKind::Cyclic, m) => write!(f, "C:{m}"),
            GroupSpec::Catalog(CatalogKind::Symmetric, m) => write!(f, "S:{m}"),
            GroupSpec::Catalog(CatalogKind::Dihedral, m) => write!(f, "D:{m}"),
            GroupSpec::File(p) => f.write_str(p),
        }
    }
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<GroupModel> {
        match self {
            GroupSpec::Catalog(kind, m) => catalog_group(*kind, *m),
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Input(format!("cannot read group file {path}: {e}")))?;
                build_from_cayley(&text)
            }
        }
    }
}
