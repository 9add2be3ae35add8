//! Finite groups as explicit Cayley tables.
//!
//! Element `0` is always the identity. Constructor orderings:
//!
//! * `cyclic:m`: residues `0..m`.
//! * `dihedral:m`: order `2m`; index `k` is `r^k`, index `m + k` is `r^k s`
//!   with `s r s⁻¹ = r⁻¹`.
//! * `quaternion`: `1, -1, i, -i, j, -j, k, -k`.
//! * `symmetric:m`: permutations of `0..m` in lexicographic order of their
//!   one-line notation; composition `(στ)(x) = σ(τ(x))`.
//! * `product:G,H`: pairs `(g, h)` at index `g·|H| + h`.
//!
//! The second half of the module is a small toolkit over [`GroupOps`]
//! (subgroup generation, normal closure, lower central series) shared with
//! the monomial image groups.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::path::Path;

use thiserror::Error;

pub type GroupElement = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("element 0 is not the identity (row/column {elem} differs)")]
    MissingIdentity { elem: usize },
    #[error("element {elem} has no inverse")]
    NoInverse { elem: usize },
    #[error("row {row} is not a permutation of 0..{order}")]
    NotLatin { row: usize, order: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("bad group spec `{0}`")]
    BadSpec(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.name).field("order", &self.order).finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

/// Prime-power status of a group order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PGroupStatus {
    /// Order 1; a p-group for every p, so no prime is singled out.
    Trivial,
    PGroup { p: u64, k: u32 },
    NotPGroup,
}

impl PGroupStatus {
    pub fn prime(self) -> Option<u64> {
        match self {
            PGroupStatus::PGroup { p, .. } => Some(p),
            _ => None,
        }
    }
}

/// `(p, k)` with `n = p^k`, or `None` if `n` is not a prime power (or is 1).
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..).find(|d| n.is_multiple_of(*d) || d * d > n).map(|d| if n.is_multiple_of(d) { d } else { n })?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

impl FiniteGroup {
    /// Build from a full multiplication table, validating every group axiom.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::OutOfRange("empty table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::Parse {
                    line: row + 1,
                    msg: format!("row {row} has {} entries, expected {order}", entries.len()),
                });
            }
            let mut seen = vec![false; order];
            for &v in entries {
                if v >= order || seen[v] {
                    return Err(GroupError::NotLatin { row, order });
                }
                seen[v] = true;
                mul.push(v as u32);
            }
        }
        for g in 0..order {
            if mul[g] as usize != g || mul[g * order] as usize != g {
                return Err(GroupError::MissingIdentity { elem: g });
            }
        }
        let mut inv = vec![0u32; order];
        for g in 0..order {
            let h = (0..order).find(|&h| mul[g * order + h] == 0).ok_or(GroupError::NoInverse { elem: g })?;
            if mul[h * order + g] != 0 {
                return Err(GroupError::NoInverse { elem: g });
            }
            inv[g] = h as u32;
        }
        let group = Self { name: name.into(), order, mul, inv };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<(), GroupError> {
        for a in 0..self.order {
            for b in 0..self.order {
                let ab = self.mul(a, b);
                for c in 0..self.order {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    fn from_fn(name: String, order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..order).map(|a| (0..order).map(|b| f(a, b)).collect()).collect();
        Self::from_table(name, table).expect("built-in constructor produced an invalid table")
    }

    pub fn trivial() -> Self {
        Self::from_fn("trivial".into(), 1, |_, _| 0)
    }

    pub fn cyclic(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::OutOfRange("cyclic order must be >= 1".into()));
        }
        Ok(Self::from_fn(format!("cyclic:{m}"), m, |a, b| (a + b) % m))
    }

    pub fn dihedral(m: usize) -> Result<Self, GroupError> {
        if m == 0 {
            return Err(GroupError::OutOfRange("dihedral parameter must be >= 1".into()));
        }
        // (r^a s^i)(r^b s^j) = r^{a + (-1)^i b} s^{i+j}
        Ok(Self::from_fn(format!("dihedral:{m}"), 2 * m, |x, y| {
            let (a, i) = (x % m, x / m);
            let (b, j) = (y % m, y / m);
            let rot = if i == 0 { (a + b) % m } else { (a + m - b) % m };
            ((i + j) % 2) * m + rot
        }))
    }

    pub fn quaternion8() -> Self {
        // unit quaternions (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
        fn unpack(x: usize) -> (i32, usize) {
            (if x.is_multiple_of(2) { 1 } else { -1 }, x / 2)
        }
        fn axis_mul(a: usize, b: usize) -> (i32, usize) {
            match (a, b) {
                (0, b) => (1, b),
                (a, 0) => (1, a),
                (a, b) if a == b => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            }
        }
        Self::from_fn("quaternion".into(), 8, |x, y| {
            let (s1, a) = unpack(x);
            let (s2, b) = unpack(y);
            let (s3, c) = axis_mul(a, b);
            2 * c + usize::from(s1 * s2 * s3 < 0)
        })
    }

    pub fn symmetric(m: usize) -> Result<Self, GroupError> {
        if !(1..=5).contains(&m) {
            return Err(GroupError::OutOfRange(format!("symmetric:{m} (need 1 <= m <= 5)")));
        }
        let perms = lex_permutations(m);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&(0..m).map(|x| s[t[x]]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Self::from_table(format!("symmetric:{m}"), table)
    }

    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let n = h.order;
        Self::from_fn(format!("product:{},{}", g.name, h.name), g.order * n, |x, y| {
            g.mul(x / n, y / n) * n + h.mul(x % n, y % n)
        })
    }

    /// Parse the Cayley file format: `order N`, then `N` rows of `N`
    /// indices; `#` lines are comments.
    pub fn from_cayley_str(name: impl Into<String>, text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GroupError::Parse { line: 0, msg: "empty file".into() })?;
        let order: usize = header
            .strip_prefix("order")
            .and_then(|rest| rest.trim().parse().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| GroupError::Parse { line: hline, msg: format!("expected `order N`, got `{header}`") })?;
        let mut table = Vec::with_capacity(order);
        for (lineno, line) in lines {
            if table.len() == order {
                return Err(GroupError::Parse { line: lineno, msg: "extra row after table".into() });
            }
            let row: Vec<usize> = line
                .split_whitespace()
                .enumerate()
                .map(|(col, tok)| {
                    tok.parse::<usize>().ok().filter(|&v| v < order).ok_or_else(|| GroupError::Parse {
                        line: lineno,
                        msg: format!("column {}: `{tok}` is not an index in [0, {order})", col + 1),
                    })
                })
                .collect::<Result<_, _>>()?;
            if row.len() != order {
                return Err(GroupError::Parse {
                    line: lineno,
                    msg: format!("expected {order} entries, found {}", row.len()),
                });
            }
            table.push(row);
        }
        if table.len() != order {
            return Err(GroupError::Parse {
                line: text.lines().count(),
                msg: format!("expected {order} rows, found {}", table.len()),
            });
        }
        Self::from_table(name, table)
    }

    pub fn from_cayley_file(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Self::from_cayley_str(format!("file:{}", path.display()), &text)
    }

    pub fn to_cayley_string(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: GroupElement) -> GroupElement {
        self.inv[a] as usize
    }

    /// `g·x·g⁻¹`
    #[inline]
    pub fn conj(&self, g: GroupElement, x: GroupElement) -> GroupElement {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a·b·a⁻¹·b⁻¹`
    #[inline]
    pub fn comm(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Product of a sequence, left to right.
    pub fn product_of(&self, elems: impl IntoIterator<Item = GroupElement>) -> GroupElement {
        elems.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn element_order(&self, g: GroupElement) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_p_group(&self) -> PGroupStatus {
        if self.order == 1 {
            return PGroupStatus::Trivial;
        }
        match prime_power(self.order as u64) {
            Some((p, k)) => PGroupStatus::PGroup { p, k },
            None => PGroupStatus::NotPGroup,
        }
    }

    pub fn lower_central_series(&self, gens: &[GroupElement]) -> Vec<Vec<GroupElement>> {
        lower_central_series(self, gens, None).expect("unbounded series cannot exceed a budget")
    }

    pub fn nilpotency_class(&self) -> Option<usize> {
        let all: Vec<_> = self.elements().collect();
        nilpotency_class(&self.lower_central_series(&all))
    }

    /// Whether `set` is a subgroup normalized by every element.
    pub fn is_normal_subgroup(&self, set: &HashSet<GroupElement>) -> bool {
        set.contains(&0)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
            && (0..self.order).all(|g| set.iter().all(|&h| set.contains(&self.conj(g, h))))
    }
}

fn lex_permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Parse a group spec:
/// `cyclic:m | dihedral:m | quaternion | symmetric:m | product:<spec>,<spec> | trivial | file:<path>`.
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup, GroupError> {
    let spec = spec.trim();
    let bad = || GroupError::BadSpec(spec.to_string());
    let int = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match spec.split_once(':') {
        None => match spec {
            "trivial" => Ok(FiniteGroup::trivial()),
            "quaternion" => Ok(FiniteGroup::quaternion8()),
            _ => Err(bad()),
        },
        Some(("cyclic", m)) => FiniteGroup::cyclic(int(m)?),
        Some(("dihedral", m)) => FiniteGroup::dihedral(int(m)?),
        Some(("symmetric", m)) => FiniteGroup::symmetric(int(m)?),
        Some(("file", path)) => FiniteGroup::from_cayley_file(Path::new(path)),
        Some(("product", rest)) => {
            // Split at the first comma whose left side is itself a valid spec.
            for (pos, _) in rest.match_indices(',') {
                if let Ok(left) = parse_group_spec(&rest[..pos]) {
                    let right = parse_group_spec(&rest[pos + 1..])?;
                    return Ok(FiniteGroup::product(&left, &right));
                }
            }
            Err(bad())
        }
        Some(_) => Err(bad()),
    }
}

// ---------------------------------------------------------------------------
// Generic finite-group toolkit

/// Minimal interface for groups whose elements are explicit values.
pub trait GroupOps {
    type Elem: Clone + Eq + Hash + Ord;

    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Self::Elem;

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.op(a, b);
        let ai_bi = self.op(&self.inverse(a), &self.inverse(b));
        self.op(&ab, &ai_bi)
    }

    fn conjugate(&self, g: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.op(&self.op(g, x), &self.inverse(g))
    }
}

impl GroupOps for FiniteGroup {
    type Elem = GroupElement;

    fn identity(&self) -> usize {
        0
    }

    fn op(&self, a: &usize, b: &usize) -> usize {
        self.mul(*a, *b)
    }

    fn inverse(&self, a: &usize) -> usize {
        self.inv(*a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("element budget of {limit} exceeded")]
pub struct BudgetExceeded {
    pub limit: usize,
}

/// A subgroup kept as an explicit element set with its generators.
#[derive(Debug, Clone)]
pub struct Subgroup<E> {
    pub gens: Vec<E>,
    pub elements: HashSet<E>,
}

impl<E: Clone + Eq + Hash + Ord> Subgroup<E> {
    pub fn trivial<G: GroupOps<Elem = E>>(group: &G) -> Self {
        Self { gens: Vec::new(), elements: HashSet::from([group.identity()]) }
    }

    pub fn generated<G: GroupOps<Elem = E>>(
        group: &G,
        gens: &[E],
        budget: Option<usize>,
    ) -> Result<Self, BudgetExceeded> {
        let mut sub = Self::trivial(group);
        for g in gens {
            sub.adjoin(group, g.clone(), budget)?;
        }
        Ok(sub)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.elements.contains(e)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Enlarge to `⟨self, g⟩`. Returns whether the subgroup grew.
    pub fn adjoin<G: GroupOps<Elem = E>>(
        &mut self,
        group: &G,
        g: E,
        budget: Option<usize>,
    ) -> Result<bool, BudgetExceeded> {
        if self.elements.contains(&g) {
            return Ok(false);
        }
        self.gens.push(g);
        let mut queue: VecDeque<E> = self.elements.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for s in &self.gens {
                let y = group.op(&x, s);
                if !self.elements.contains(&y) {
                    if budget.is_some_and(|limit| self.elements.len() >= limit) {
                        return Err(BudgetExceeded { limit: budget.unwrap_or(0) });
                    }
                    self.elements.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(true)
    }

    pub fn sorted(&self) -> Vec<E> {
        let mut v: Vec<E> = self.elements.iter().cloned().collect();
        v.sort();
        v
    }
}

/// Smallest subgroup containing `seeds` and normalized by every element of
/// `conjugators`.
pub fn normal_closure<G: GroupOps>(
    group: &G,
    seeds: impl IntoIterator<Item = G::Elem>,
    conjugators: &[G::Elem],
    budget: Option<usize>,
) -> Result<Subgroup<G::Elem>, BudgetExceeded> {
    let mut sub = Subgroup::trivial(group);
    let mut pending: VecDeque<G::Elem> = seeds.into_iter().collect();
    loop {
        while let Some(x) = pending.pop_front() {
            sub.adjoin(group, x, budget)?;
        }
        for g in sub.gens.clone() {
            for c in conjugators {
                let y = group.conjugate(c, &g);
                if !sub.contains(&y) {
                    pending.push_back(y);
                }
            }
        }
        if pending.is_empty() {
            return Ok(sub);
        }
    }
}

/// `L_1 = ⟨gens⟩`, `L_{k+1} = [L_k, L_1]`, until the series stabilizes.
/// Each term is returned as a sorted element list.
///
/// `[L_k, L_1]` is computed as the normal closure in `L_1` of the
/// commutators `[a, s]` with `a ∈ L_k` and `s` a generator, which generate
/// the same subgroup because `L_k` is normal.
pub fn lower_central_series<G: GroupOps>(
    group: &G,
    gens: &[G::Elem],
    budget: Option<usize>,
) -> Result<Vec<Vec<G::Elem>>, BudgetExceeded> {
    let top = Subgroup::generated(group, gens, budget)?;
    let mut series = vec![top.sorted()];
    loop {
        let current = series.last().expect("series is nonempty");
        let mut seeds = Vec::new();
        let mut seen = HashSet::new();
        for a in current {
            for s in gens {
                let c = group.commutator(a, s);
                if seen.insert(c.clone()) {
                    seeds.push(c);
                }
            }
        }
        seeds.sort();
        let next = normal_closure(group, seeds, gens, budget)?.sorted();
        if next.len() == current.len() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// Class `c` with `L_{c+1}` trivial, or `None` if the series stops above
/// the trivial group.
pub fn nilpotency_class<E>(series: &[Vec<E>]) -> Option<usize> {
    let last = series.last()?;
    (last.len() == 1).then(|| series.len() - 1)
}
