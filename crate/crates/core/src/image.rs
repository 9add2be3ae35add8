//! Finite image groups of braid representations: closure, orders,
//! diagonal and permutation parts, nilpotency, the Coxeter criterion and
//! a checker for the filtration lemma on automorphism groups.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braidrep::{BraidError, MonomialGroup, MonomialOp, TensorPowerRep};
use crate::double::{Conventions, TwistedDouble};
use crate::group::{
    lower_central_series, nilpotency_class, parse_group_spec, prime_power, BudgetExceeded, FiniteGroup,
    GroupElement, GroupError, Subgroup,
};

pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error("generators disagree in dimension or root order")]
    Mismatch,
    #[error("no generators given")]
    NoGenerators,
    #[error("closure is incomplete after {found} elements; raise --max-elements")]
    Incomplete { found: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("filtration file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// The group generated by a set of monomial operators.
#[derive(Debug, Clone)]
pub struct GroupClosure {
    /// Sorted in the canonical byte-wise order.
    pub elements: Vec<MonomialOp>,
    /// Positions of the generators in `elements`.
    pub generators: Vec<usize>,
    pub complete: bool,
}

impl GroupClosure {
    /// Number of elements found; the group order when complete.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, op: &MonomialOp) -> bool {
        self.elements.binary_search(op).is_ok()
    }

    pub fn generator_ops(&self) -> Vec<MonomialOp> {
        self.generators.iter().map(|&i| self.elements[i].clone()).collect()
    }

    fn require_complete(&self) -> Result<(), ImageError> {
        if self.complete {
            Ok(())
        } else {
            Err(ImageError::Incomplete { found: self.order() })
        }
    }

    /// Check `a∘b ∈ self` and `a⁻¹ ∈ self`: every pair when there are at
    /// most `max_pairs` of them, otherwise a deterministic stride sample.
    pub fn check_closed(&self, max_pairs: usize) -> Result<(), (usize, usize)> {
        let n = self.order();
        let stride = (n * n).div_ceil(max_pairs.max(1)).max(1);
        for (i, a) in self.elements.iter().enumerate() {
            if !self.contains(&a.inverse()) {
                return Err((i, i));
            }
        }
        let mut idx = 0;
        while idx < n * n {
            let (i, j) = (idx / n, idx % n);
            if !self.contains(&self.elements[i].compose(&self.elements[j])) {
                return Err((i, j));
            }
            idx += stride;
        }
        Ok(())
    }
}

/// Breadth-first closure under right multiplication by the generators
/// and their inverses. Each new layer is sorted before it is expanded, so
/// the result does not depend on hashing.
pub fn close(gens: &[MonomialOp], max_elements: usize) -> Result<GroupClosure, ImageError> {
    let first = gens.first().ok_or(ImageError::NoGenerators)?;
    if gens.iter().any(|g| g.dim() != first.dim() || g.r() != first.r()) {
        return Err(ImageError::Mismatch);
    }
    let mut steps: Vec<MonomialOp> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
    steps.sort();
    steps.dedup();
    let identity = MonomialOp::identity(first.r(), first.dim());
    let mut seen: HashSet<MonomialOp> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    let mut complete = true;
    'outer: while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &steps {
                let y = x.compose(s);
                if seen.contains(&y) {
                    continue;
                }
                if seen.len() >= max_elements.max(1) {
                    complete = false;
                    break 'outer;
                }
                seen.insert(y.clone());
                next.push(y);
            }
        }
        next.sort();
        frontier = next;
    }
    let mut elements: Vec<MonomialOp> = seen.into_iter().collect();
    elements.sort();
    let generators = gens.iter().filter_map(|g| elements.binary_search(g).ok()).collect();
    Ok(GroupClosure { elements, generators, complete })
}

/// Least `k ≤ cap` with `op^k = 1`.
pub fn element_order(op: &MonomialOp, cap: u64) -> Option<u64> {
    op.cycle_order().filter(|&k| k <= cap)
}

/// Elements with trivial permutation part.
pub fn diagonal_subgroup_order(c: &GroupClosure) -> Result<usize, ImageError> {
    c.require_complete()?;
    Ok(c.elements.iter().filter(|e| e.is_diagonal()).count())
}

/// Number of distinct permutation parts.
pub fn permutation_quotient_order(c: &GroupClosure) -> Result<usize, ImageError> {
    c.require_complete()?;
    Ok(c.elements.iter().map(|e| e.perm()).collect::<HashSet<_>>().len())
}

/// Nilpotency class of a complete closure of order at most `cap`, computed
/// from its lower central series; `None` if it is not nilpotent.
pub fn nilpotency_class_closure(c: &GroupClosure, cap: usize) -> Result<Option<usize>, ImageError> {
    c.require_complete()?;
    if c.order() > cap {
        return Err(BudgetExceeded { limit: cap }.into());
    }
    let first = &c.elements[0];
    let group = MonomialGroup { r: first.r(), dim: first.dim() };
    let series = lower_central_series(&group, &c.generator_ops(), Some(cap))?;
    Ok(nilpotency_class(&series))
}

/// Coxeter's criterion `1/n + 1/k > 1/2`, i.e. `2(n + k) > n·k`.
pub fn coxeter_finite(n: u64, k: u64) -> Result<bool, ImageError> {
    if n < 2 || k < 1 {
        return Err(ImageError::InvalidArgument(format!("need n >= 2 and k >= 1, got n={n}, k={k}")));
    }
    Ok(2 * (n as u128 + k as u128) > n as u128 * k as u128)
}

// ---- filtration lemma ----------------------------------------------------

/// A chain `H = H_0 ⊇ H_1 ⊇ … ⊇ H_N = {e}` of element sets.
#[derive(Debug, Clone)]
pub struct FiltrationSpec {
    pub group: FiniteGroup,
    pub levels: Vec<Vec<GroupElement>>,
}

/// Filtration and automorphisms read from one file.
#[derive(Debug, Clone)]
pub struct FiltrationInput {
    pub spec: FiltrationSpec,
    pub auts: Vec<Vec<GroupElement>>,
}

impl FiltrationInput {
    /// `group <spec>`, then `level k: <indices>` for `k = 0..=N` and any
    /// number of `aut: <images>` lines. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ImageError> {
        let err = |line: usize, msg: String| ImageError::Parse { line, msg };
        let parse_list = |line: usize, s: &str| -> Result<Vec<usize>, ImageError> {
            s.split_whitespace().map(|t| t.parse().map_err(|_| err(line, format!("bad index `{t}`")))).collect()
        };
        let mut group = None;
        let mut levels: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut auts = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(spec) = body.strip_prefix("group ") {
                group = Some(parse_group_spec(spec.trim()).map_err(|e| err(line, e.to_string()))?);
            } else if let Some(rest) = body.strip_prefix("level ") {
                let (k, list) = rest.split_once(':').ok_or_else(|| err(line, "expected `level k: ...`".into()))?;
                let k: usize = k.trim().parse().map_err(|_| err(line, "bad level number".into()))?;
                if levels.insert(k, parse_list(line, list)?).is_some() {
                    return Err(err(line, format!("level {k} given twice")));
                }
            } else if let Some(list) = body.strip_prefix("aut:") {
                auts.push(parse_list(line, list)?);
            } else {
                return Err(err(line, format!("unrecognized line `{body}`")));
            }
        }
        let group = group.ok_or_else(|| err(0, "missing `group` line".into()))?;
        let n = levels.len();
        let levels = (0..n)
            .map(|k| levels.remove(&k).ok_or_else(|| err(0, format!("levels must be numbered 0..{n}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let order = group.order();
        if levels.iter().chain(&auts).flatten().any(|&e| e >= order) {
            return Err(err(0, format!("element index out of range for order {order}")));
        }
        Ok(Self { spec: FiltrationSpec { group, levels }, auts })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiltrationViolation {
    /// The chain is empty, does not start at `H`, or does not end at `{e}`.
    ChainEnds,
    NotNested { level: usize, element: GroupElement },
    NotNormalSubgroup { level: usize },
    /// `[a, b] ∉ H_{i+j}` with `a ∈ H_i`, `b ∈ H_j`.
    CommutatorLevel { i: usize, j: usize, a: GroupElement, b: GroupElement },
    NotAutomorphism { aut: usize },
    NotPreserved { aut: usize, level: usize, element: GroupElement },
    /// `φ(h)·h⁻¹ ∉ H_{i+1}` for `h ∈ H_i`.
    NontrivialOnQuotient { aut: usize, level: usize, element: GroupElement },
}

impl fmt::Display for FiltrationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ChainEnds => write!(f, "chain must start at H and end at the trivial subgroup"),
            Self::NotNested { level, element } => write!(f, "element {element} of level {level} missing from level {}", level - 1),
            Self::NotNormalSubgroup { level } => write!(f, "level {level} is not a normal subgroup"),
            Self::CommutatorLevel { i, j, a, b } => write!(f, "[{a},{b}] not in level {} (a in level {i}, b in level {j})", i + j),
            Self::NotAutomorphism { aut } => write!(f, "aut {aut} is not an automorphism"),
            Self::NotPreserved { aut, level, element } => write!(f, "aut {aut} moves element {element} out of level {level}"),
            Self::NontrivialOnQuotient { aut, level, element } => {
                write!(f, "aut {aut} acts nontrivially on level {level}/{} at element {element}", level + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    /// `N`, the index of the trivial term.
    pub length: usize,
    pub violations: Vec<FiltrationViolation>,
    pub aut_group_order: Option<usize>,
    pub aut_group_class: Option<usize>,
    /// `N − 1`
    pub class_bound: usize,
    /// `Some(class ≤ N − 1)` when the class was computed.
    pub class_within_bound: Option<bool>,
}

impl FiltrationReport {
    pub fn hypotheses_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

fn is_automorphism(h: &FiniteGroup, phi: &[GroupElement]) -> bool {
    let n = h.order();
    phi.len() == n
        && phi.iter().collect::<HashSet<_>>().len() == n
        && (0..n).all(|a| (0..n).all(|b| phi[h.mul(a, b)] == h.mul(phi[a], phi[b])))
}

/// Verify the hypotheses of the filtration lemma and measure the group
/// generated by `auts`. Hypothesis failures are reported, not assumed.
pub fn check_filtration_lemma(
    f: &FiltrationSpec,
    auts: &[Vec<GroupElement>],
    cap: usize,
) -> Result<FiltrationReport, ImageError> {
    let h = &f.group;
    let order = h.order();
    let sets: Vec<HashSet<GroupElement>> = f.levels.iter().map(|l| l.iter().copied().collect()).collect();
    let big_n = sets.len().saturating_sub(1);
    let mut violations = Vec::new();

    let ends_ok = sets.len() >= 2 && sets[0].len() == order && sets[big_n] == HashSet::from([0]);
    if !ends_ok {
        violations.push(FiltrationViolation::ChainEnds);
    }
    for (k, s) in sets.iter().enumerate() {
        if !h.is_normal_subgroup(s) {
            violations.push(FiltrationViolation::NotNormalSubgroup { level: k });
        }
        if k > 0 {
            if let Some(&e) = f.levels[k].iter().find(|e| !sets[k - 1].contains(e)) {
                violations.push(FiltrationViolation::NotNested { level: k, element: e });
            }
        }
    }
    'comm: for i in 0..sets.len() {
        for j in 0..sets.len() {
            let target = &sets[(i + j).min(big_n)];
            for &a in &f.levels[i] {
                for &b in &f.levels[j] {
                    if !target.contains(&h.comm(a, b)) {
                        violations.push(FiltrationViolation::CommutatorLevel { i, j, a, b });
                        break 'comm;
                    }
                }
            }
        }
    }
    for (idx, phi) in auts.iter().enumerate() {
        if !is_automorphism(h, phi) {
            violations.push(FiltrationViolation::NotAutomorphism { aut: idx });
            continue;
        }
        for (k, level) in f.levels.iter().enumerate() {
            if let Some(&e) = level.iter().find(|&&e| !sets[k].contains(&phi[e])) {
                violations.push(FiltrationViolation::NotPreserved { aut: idx, level: k, element: e });
            }
            if k < big_n {
                let below = &sets[k + 1];
                if let Some(&e) = level.iter().find(|&&e| !below.contains(&h.mul(phi[e], h.inv(e)))) {
                    violations.push(FiltrationViolation::NontrivialOnQuotient { aut: idx, level: k, element: e });
                }
            }
        }
    }

    // Automorphisms as permutation operators on the elements of H.
    let valid: Vec<MonomialOp> = auts
        .iter()
        .filter(|phi| is_automorphism(h, phi))
        .map(|phi| MonomialOp::new(1, phi.iter().map(|&e| e as u32).collect(), vec![0; order]))
        .collect::<Result<_, _>>()?;
    let perm_group = MonomialGroup { r: 1, dim: order };
    let (aut_group_order, aut_group_class) = match Subgroup::generated(&perm_group, &valid, Some(cap)) {
        Ok(sub) => {
            let series = lower_central_series(&perm_group, &valid, Some(cap))?;
            (Some(sub.order()), nilpotency_class(&series))
        }
        Err(_) => (None, None),
    };
    let class_bound = big_n.saturating_sub(1);
    Ok(FiltrationReport {
        length: big_n,
        violations,
        aut_group_order,
        aut_group_class,
        class_bound,
        class_within_bound: aut_group_class.map(|c| c <= class_bound),
    })
}

// ---- reports -------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
}

/// Closure data for one image group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSummary {
    pub complete: bool,
    /// Elements found; equals the order when complete.
    pub elements_found: usize,
    pub order: Option<usize>,
    pub diagonal_subgroup_order: Option<usize>,
    pub permutation_quotient_order: Option<usize>,
    /// `order = p^k`, or `None` when the order is 1, unknown or not a prime power.
    pub order_prime_power: Option<PrimePower>,
    /// Whether the order is a power of the prime of `G`, when `G` is a
    /// nontrivial p-group and the closure is complete.
    pub order_is_power_of_group_prime: Option<bool>,
    /// Lower central series class; computed for the pure image only.
    pub nilpotency_class: Option<usize>,
    /// `false` if a nilpotency computation was attempted and hit the cap.
    pub nilpotency_complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterVerdict {
    /// Order of the image of `β_1`.
    pub k: u64,
    /// `1/n + 1/k > 1/2`
    pub finite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageReport {
    pub group: String,
    pub group_order: usize,
    /// Prime of `G` when it is a nontrivial p-group.
    pub group_prime: Option<u64>,
    pub group_nilpotency_class: Option<usize>,
    pub cocycle: String,
    pub conventions: Conventions,
    pub n: usize,
    pub r: u32,
    /// `|G|^{2n}`
    pub dim: usize,
    pub max_elements: usize,
    pub braid: Option<ClosureSummary>,
    pub pure: Option<ClosureSummary>,
    /// Orders of the images of `β_1, …, β_{n−1}`.
    pub generator_orders: Vec<Option<u64>>,
    pub beta1_squared_order: Option<u64>,
    pub beta1_squared_order_is_power_of_group_prime: Option<bool>,
    pub coxeter: Option<CoxeterVerdict>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub max_elements: usize,
    pub braid: bool,
    pub pure: bool,
    /// Largest pure image for which the nilpotency class is computed.
    pub class_cap: usize,
    pub element_order_cap: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { max_elements: DEFAULT_MAX_ELEMENTS, braid: true, pure: true, class_cap: 100_000, element_order_cap: u64::MAX }
    }
}

fn is_power_of(order: usize, p: Option<u64>) -> Option<bool> {
    let p = p?;
    Some(order == 1 || prime_power(order as u64).is_some_and(|(q, _)| q == p))
}

fn summarize(gens: &[MonomialOp], opts: &AnalyzeOptions, group_prime: Option<u64>, with_class: bool) -> Result<ClosureSummary, ImageError> {
    let c = close(gens, opts.max_elements)?;
    let mut s = ClosureSummary {
        complete: c.complete,
        elements_found: c.order(),
        order: None,
        diagonal_subgroup_order: None,
        permutation_quotient_order: None,
        order_prime_power: None,
        order_is_power_of_group_prime: None,
        nilpotency_class: None,
        nilpotency_complete: true,
    };
    if !c.complete {
        s.nilpotency_complete = !with_class;
        return Ok(s);
    }
    s.order = Some(c.order());
    s.diagonal_subgroup_order = Some(diagonal_subgroup_order(&c)?);
    s.permutation_quotient_order = Some(permutation_quotient_order(&c)?);
    s.order_prime_power = prime_power(c.order() as u64).map(|(p, k)| PrimePower { p, k });
    s.order_is_power_of_group_prime = is_power_of(c.order(), group_prime);
    if with_class {
        match nilpotency_class_closure(&c, opts.class_cap) {
            Ok(class) => s.nilpotency_class = class,
            Err(ImageError::Budget(_)) => s.nilpotency_complete = false,
            Err(e) => return Err(e),
        }
    }
    Ok(s)
}

/// Build the braid and pure braid images of `B_n` on `V^{⊗n}` and fill
/// in every report field that fits in the budgets. Budget exhaustion is
/// reported through the completeness flags.
pub fn analyze(double: &TwistedDouble, n: usize, opts: &AnalyzeOptions) -> Result<ImageReport, ImageError> {
    if n < 2 {
        return Err(ImageError::InvalidArgument("need at least two strands".into()));
    }
    let grp = double.cocycle().group();
    let group_prime = grp.is_p_group().prime();
    let rep = TensorPowerRep::new(double.clone(), n)?;
    let gens = rep.braid_generators()?;
    let generator_orders: Vec<Option<u64>> = gens.iter().map(|g| element_order(g, opts.element_order_cap)).collect();
    let square = gens[0].compose(&gens[0]);
    let beta1_squared_order = element_order(&square, opts.element_order_cap);

    let braid = opts.braid.then(|| summarize(&gens, opts, group_prime, false)).transpose()?;
    let pure = if opts.pure {
        Some(summarize(&rep.pure_braid_generators()?, opts, group_prime, true)?)
    } else {
        None
    };
    let coxeter = generator_orders[0].map(|k| CoxeterVerdict { k, finite: coxeter_finite(n as u64, k).unwrap_or(false) });
    let group_nilpotency_class = grp.nilpotency_class();
    Ok(ImageReport {
        group: grp.name().to_string(),
        group_order: grp.order(),
        group_prime,
        group_nilpotency_class,
        cocycle: double.cocycle().id().to_string(),
        conventions: double.conventions(),
        n,
        r: rep.r(),
        dim: rep.dim(),
        max_elements: opts.max_elements,
        braid,
        pure,
        generator_orders,
        beta1_squared_order,
        beta1_squared_order_is_power_of_group_prime: beta1_squared_order
            .and_then(|k| usize::try_from(k).ok())
            .and_then(|k| is_power_of(k, group_prime)),
        coxeter,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cocycle::Cocycle3;

    fn double(m: usize, q: Option<u32>) -> TwistedDouble {
        let w = match q {
            Some(q) => Cocycle3::cyclic(m, q).unwrap(),
            None => Cocycle3::trivial(Arc::new(FiniteGroup::cyclic(m).unwrap()), m as u32),
        };
        TwistedDouble::new(w)
    }

    #[test]
    fn identity_closure() {
        let c = close(&[MonomialOp::identity(3, 5)], 10).unwrap();
        assert!(c.complete);
        assert_eq!(c.order(), 1);
        assert_eq!(diagonal_subgroup_order(&c), Ok(1));
        assert_eq!(permutation_quotient_order(&c), Ok(1));
        assert_eq!(nilpotency_class_closure(&c, 10), Ok(Some(0)));
        assert!(close(&[], 10).is_err());
        let mismatch = [MonomialOp::identity(3, 5), MonomialOp::identity(3, 4)];
        assert_eq!(close(&mismatch, 10).unwrap_err(), ImageError::Mismatch);
    }

    #[test]
    fn budget_marks_incomplete() {
        let cyc = MonomialOp::new(5, vec![1, 2, 3, 4, 5, 6, 0], vec![1, 0, 0, 0, 0, 0, 0]).unwrap();
        let c = close(std::slice::from_ref(&cyc), 10).unwrap();
        assert!(!c.complete);
        assert_eq!(c.order(), 10);
        assert!(diagonal_subgroup_order(&c).is_err());
        let c = close(&[cyc], 1000).unwrap();
        assert!(c.complete);
        assert_eq!(c.order(), 35);
        assert_eq!(c.check_closed(usize::MAX), Ok(()));
    }

    #[test]
    fn z2_two_strands() {
        let rep = TensorPowerRep::new(double(2, None), 2).unwrap();
        let b = rep.braid_generator(1).unwrap();
        assert_eq!(element_order(&b, 100), Some(4));
        assert_eq!(element_order(&b.compose(&b), 100), Some(2));
        assert_eq!(element_order(&b, 3), None);
        let c = close(&[b], 100).unwrap();
        assert_eq!(c.order(), 4);
        assert_eq!(diagonal_subgroup_order(&c), Ok(1));
        assert_eq!(permutation_quotient_order(&c), Ok(4));
    }

    #[test]
    fn report_for_z2() {
        let report = analyze(&double(2, None), 2, &AnalyzeOptions::default()).unwrap();
        let braid = report.braid.unwrap();
        let pure = report.pure.unwrap();
        assert_eq!(braid.order, Some(4));
        assert_eq!(pure.order, Some(2));
        assert_eq!(pure.nilpotency_class, Some(1));
        assert_eq!(pure.order_prime_power, Some(PrimePower { p: 2, k: 1 }));
        assert_eq!(pure.order_is_power_of_group_prime, Some(true));
        assert_eq!(report.generator_orders, vec![Some(4)]);
        assert_eq!(report.coxeter, Some(CoxeterVerdict { k: 4, finite: true }));
    }

    #[test]
    fn trivial_group_reports_order_one() {
        let w = Cocycle3::trivial(Arc::new(FiniteGroup::trivial()), 1);
        let report = analyze(&TwistedDouble::new(w), 5, &AnalyzeOptions::default()).unwrap();
        assert_eq!(report.braid.unwrap().order, Some(1));
        assert_eq!(report.pure.unwrap().order, Some(1));
        assert_eq!(report.dim, 1);
    }

    #[test]
    fn p_group_images_have_prime_power_order() {
        for (m, q) in [(3, None), (3, Some(1)), (4, None), (4, Some(1)), (2, Some(1))] {
            let report = analyze(&double(m, q), 2, &AnalyzeOptions::default()).unwrap();
            let pure = report.pure.as_ref().unwrap();
            let braid = report.braid.as_ref().unwrap();
            assert!(pure.complete && braid.complete);
            assert_eq!(pure.order_is_power_of_group_prime, Some(true), "{report:?}");
            assert_eq!(report.beta1_squared_order_is_power_of_group_prime, Some(true));
            assert_eq!(braid.order, Some(braid.diagonal_subgroup_order.unwrap() * braid.permutation_quotient_order.unwrap()));
        }
    }

    #[test]
    fn coxeter_grid() {
        assert_eq!(coxeter_finite(3, 4), Ok(true));
        assert_eq!(coxeter_finite(5, 5), Ok(false));
        assert_eq!(coxeter_finite(3, 6), Ok(false));
        assert_eq!(coxeter_finite(3, 5), Ok(true));
        for k in 1..20 {
            assert_eq!(coxeter_finite(2, k), Ok(true));
        }
        assert!(coxeter_finite(1, 3).is_err());
        assert!(coxeter_finite(3, 0).is_err());
    }

    fn z4_filtration() -> FiltrationSpec {
        FiltrationSpec { group: FiniteGroup::cyclic(4).unwrap(), levels: vec![vec![0, 1, 2, 3], vec![0, 2], vec![0]] }
    }

    #[test]
    fn filtration_example_on_z4() {
        let report = check_filtration_lemma(&z4_filtration(), &[vec![0, 3, 2, 1]], 1000).unwrap();
        assert!(report.hypotheses_hold(), "{:?}", report.violations);
        assert_eq!(report.aut_group_order, Some(2));
        assert_eq!(report.aut_group_class, Some(1));
        assert_eq!(report.class_bound, 1);
        assert_eq!(report.class_within_bound, Some(true));

        let identity = check_filtration_lemma(&z4_filtration(), &[vec![0, 1, 2, 3]], 1000).unwrap();
        assert_eq!(identity.aut_group_class, Some(0));
    }

    #[test]
    fn filtration_violations_are_reported() {
        // not a homomorphism
        let bad = check_filtration_lemma(&z4_filtration(), &[vec![0, 2, 1, 3]], 1000).unwrap();
        assert_eq!(bad.violations, vec![FiltrationViolation::NotAutomorphism { aut: 0 }]);
        // Z/2 x Z/2 with chain H ⊃ <(1,0)> ⊃ 1; swapping the factors moves level 1
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = FiniteGroup::product(&z2, &z2);
        let f = FiltrationSpec { group: v4, levels: vec![vec![0, 1, 2, 3], vec![0, 2], vec![0]] };
        let report = check_filtration_lemma(&f, &[vec![0, 2, 1, 3]], 1000).unwrap();
        assert!(report
            .violations
            .contains(&FiltrationViolation::NotPreserved { aut: 0, level: 1, element: 2 }));
        // a broken chain
        let f = FiltrationSpec { group: FiniteGroup::cyclic(4).unwrap(), levels: vec![vec![0, 1, 2, 3], vec![0, 1], vec![0]] };
        let report = check_filtration_lemma(&f, &[], 1000).unwrap();
        assert!(report.violations.contains(&FiltrationViolation::NotNormalSubgroup { level: 1 }));
    }

    #[test]
    fn filtration_file_parsing() {
        let text = "# example\ngroup cyclic:4\nlevel 0: 0 1 2 3\nlevel 1: 0 2\nlevel 2: 0\naut: 0 3 2 1\n";
        let input = FiltrationInput::parse(text).unwrap();
        assert_eq!(input.spec.levels.len(), 3);
        assert_eq!(input.auts, vec![vec![0, 3, 2, 1]]);
        assert!(FiltrationInput::parse("level 0: 0\n").is_err());
        assert!(FiltrationInput::parse("group cyclic:2\nlevel 1: 0\n").is_err());
        assert!(FiltrationInput::parse("group cyclic:2\nlevel 0: 0 5\n").is_err());
        assert!(FiltrationInput::parse("group cyclic:2\nbogus\n").is_err());
    }
}
