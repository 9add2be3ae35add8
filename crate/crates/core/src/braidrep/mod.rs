//! The braid group action on tensor powers of the regular module of
//! `D^ω(G)`, realized as monomial operators on the basis labels.
//!
//! A basis vector of `V^{⊗n}` is a sequence of `n` pairs `(x_k, g_k)`
//! standing for `δ_{x_k}·ḡ_k`. Its index is the mixed-radix number with
//! digit `x_k·|G| + g_k` at position `k`, position 1 most significant.
//! Every reported operator acts on the left-comb bracketing.

pub mod free;
pub mod monomial;
pub mod tree;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::double::TwistedDouble;
use crate::group::{FiniteGroup, GroupElement};

pub use monomial::{MonomialGroup, MonomialOp, MAX_DIM};
pub use tree::{AssocMove, ParenTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("invalid operator: {0}")]
    Invalid(String),
    #[error("operator dimension {dim} exceeds the cap of {cap}", cap = MAX_DIM)]
    DimensionCap { dim: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("trees have {from} and {to} leaves")]
    LeafMismatch { from: usize, to: usize },
    #[error("operators disagree in dimension or root order")]
    Mismatch,
}

/// A basis label of `V^{⊗n}`: pairs `(x_k, g_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub pairs: Vec<(GroupElement, GroupElement)>,
}

/// A word in the braid generators: `k` for `β_k`, `-k` for `β_k⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BraidWord(pub Vec<i32>);

impl BraidWord {
    pub fn validate(&self, n: usize) -> Result<(), BraidError> {
        match self.0.iter().find(|&&s| s == 0 || s.unsigned_abs() as usize >= n) {
            Some(&s) => Err(BraidError::IndexOutOfRange { index: s.unsigned_abs() as usize, n }),
            None => Ok(()),
        }
    }

    /// `A_ij = β_{j−1}⋯β_{i+1} β_i² β_{i+1}⁻¹⋯β_{j−1}⁻¹`, `1 ≤ i < j ≤ n`.
    pub fn band(n: usize, i: usize, j: usize) -> Result<Self, BraidError> {
        if i == 0 || i >= j || j > n {
            return Err(BraidError::IndexOutOfRange { index: if i == 0 { i } else { j }, n });
        }
        let conj: Vec<i32> = (i + 1..j).rev().map(|k| k as i32).collect();
        let mut word = conj.clone();
        word.extend([i as i32, i as i32]);
        word.extend(conj.iter().rev().map(|k| -k));
        Ok(Self(word))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|&s| if s > 0 { format!("b{s}") } else { format!("b{}^-1", -s) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Which braid relation failed, with 1-based generator indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationViolation {
    /// `β_i β_{i+1} β_i ≠ β_{i+1} β_i β_{i+1}`
    B1 { i: usize },
    /// `β_i β_j ≠ β_j β_i` with `|i − j| ≥ 2`
    B2 { i: usize, j: usize },
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationViolation::B1 { i } => write!(f, "b{i} b{} b{i} != b{} b{i} b{}", i + 1, i + 1, i + 1),
            RelationViolation::B2 { i, j } => write!(f, "b{i} b{j} != b{j} b{i}"),
        }
    }
}

/// The representation of `B_n` on `V^{⊗n}`, `V` the regular module.
#[derive(Debug, Clone)]
pub struct TensorPowerRep {
    double: TwistedDouble,
    n: usize,
    order: usize,
    dim: usize,
}

impl TensorPowerRep {
    pub fn new(double: TwistedDouble, n: usize) -> Result<Self, BraidError> {
        if n == 0 {
            return Err(BraidError::Invalid("need at least one strand".into()));
        }
        let order = double.cocycle().group().order();
        let dim = (order * order)
            .checked_pow(n as u32)
            .filter(|&d| d <= MAX_DIM)
            .ok_or(BraidError::DimensionCap { dim: usize::MAX })?;
        Ok(Self { double, n, order, dim })
    }

    pub fn double(&self) -> &TwistedDouble {
        &self.double
    }

    pub fn group(&self) -> &FiniteGroup {
        self.double.cocycle().group()
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.double.r()
    }

    /// `|G|^{2n}`
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn encode(&self, label: &Label) -> usize {
        label.pairs.iter().fold(0, |acc, &(x, g)| acc * self.order * self.order + x * self.order + g)
    }

    pub fn decode(&self, mut index: usize) -> Label {
        let base = self.order * self.order;
        let mut pairs = vec![(0, 0); self.n];
        for slot in pairs.iter_mut().rev() {
            let d = index % base;
            *slot = (d / self.order, d % self.order);
            index /= base;
        }
        Label { pairs }
    }

    fn check_generator(&self, i: usize) -> Result<(), BraidError> {
        if i == 0 || i >= self.n {
            Err(BraidError::IndexOutOfRange { index: i, n: self.n })
        } else {
            Ok(())
        }
    }

    /// `Ř` on positions `i, i+1` (1-based) with no associator correction:
    /// `(x,a),(y,b) ↦ θ_{xyx⁻¹}(x,b)·(xyx⁻¹, xb),(x,a)`.
    pub fn r_check_raw(&self, i: usize) -> Result<MonomialOp, BraidError> {
        self.check_generator(i)?;
        let grp = self.group();
        let mut perm = Vec::with_capacity(self.dim);
        let mut scal = Vec::with_capacity(self.dim);
        for idx in 0..self.dim {
            let mut label = self.decode(idx);
            let ((x, a), (y, b)) = (label.pairs[i - 1], label.pairs[i]);
            let xyx = grp.conj(x, y);
            label.pairs[i - 1] = (xyx, grp.mul(x, b));
            label.pairs[i] = (x, a);
            perm.push(self.encode(&label) as u32);
            scal.push(self.double.theta(xyx, x, b).exponent());
        }
        Ok(MonomialOp::from_parts_unchecked(self.r(), perm, scal))
    }

    /// Diagonal operator of a sequence of associativity moves. A forward
    /// move on segments with `x`-products `u, v, t` contributes
    /// `ε·ŵ(u,v,t)`, a backward move its negative.
    pub fn rebracket_along(&self, moves: &[AssocMove]) -> MonomialOp {
        let grp = self.group();
        let r = self.r() as i64;
        let scal = (0..self.dim)
            .map(|idx| {
                let xs: Vec<GroupElement> = self.decode(idx).pairs.iter().map(|p| p.0).collect();
                let prod = |range: &std::ops::Range<usize>| grp.product_of(xs[range.clone()].iter().copied());
                let e: i64 = moves
                    .iter()
                    .map(|mv| {
                        let e = self.double.associator_exponent(prod(&mv.a), prod(&mv.b), prod(&mv.c)).exponent() as i64;
                        if mv.forward {
                            e
                        } else {
                            -e
                        }
                    })
                    .sum();
                e.rem_euclid(r) as u32
            })
            .collect();
        MonomialOp::diagonal(self.r(), scal)
    }

    /// Associativity isomorphism from bracketing `from` to bracketing `to`,
    /// routed through the right comb.
    pub fn rebracket(&self, from: &ParenTree, to: &ParenTree) -> Result<MonomialOp, BraidError> {
        if from.leaf_count() != self.n || to.leaf_count() != self.n {
            return Err(BraidError::LeafMismatch { from: from.leaf_count(), to: to.leaf_count() });
        }
        let there = self.rebracket_along(&from.path_to_right_comb());
        let back = self.rebracket_along(&to.path_to_right_comb()).inverse();
        Ok(back.compose(&there))
    }

    /// `β_i` on the left-comb bracketing: move to a bracketing where
    /// strands `i, i+1` are siblings, apply `Ř`, move back.
    pub fn braid_generator(&self, i: usize) -> Result<MonomialOp, BraidError> {
        self.check_generator(i)?;
        let left = ParenTree::left_comb(self.n);
        let paired = ParenTree::with_adjacent_pair(self.n, i - 1)?;
        let into = self.rebracket(&left, &paired)?;
        let out = self.rebracket(&paired, &left)?;
        Ok(out.compose(&self.r_check_raw(i)?.compose(&into)))
    }

    pub fn braid_generators(&self) -> Result<Vec<MonomialOp>, BraidError> {
        (1..self.n).map(|i| self.braid_generator(i)).collect()
    }

    /// Image of the band generator `A_ij`.
    pub fn pure_braid_generator(&self, i: usize, j: usize) -> Result<MonomialOp, BraidError> {
        self.apply_word(&BraidWord::band(self.n, i, j)?)
    }

    /// All `A_ij`, `1 ≤ i < j ≤ n`, in lexicographic order of `(i, j)`.
    pub fn pure_braid_generators(&self) -> Result<Vec<MonomialOp>, BraidError> {
        let gens = self.braid_generators()?;
        let mut out = Vec::new();
        for i in 1..self.n {
            for j in i + 1..=self.n {
                out.push(evaluate_word(&gens, self.r(), self.dim, &BraidWord::band(self.n, i, j)?)?);
            }
        }
        Ok(out)
    }

    /// Product of the word's generators, leftmost factor outermost.
    pub fn apply_word(&self, word: &BraidWord) -> Result<MonomialOp, BraidError> {
        word.validate(self.n)?;
        let gens = self.braid_generators()?;
        evaluate_word(&gens, self.r(), self.dim, word)
    }
}

/// Evaluate a word given the images `gens[k-1]` of `β_k`.
pub fn evaluate_word(gens: &[MonomialOp], r: u32, dim: usize, word: &BraidWord) -> Result<MonomialOp, BraidError> {
    word.validate(gens.len() + 1)?;
    let invs: Vec<MonomialOp> = gens.iter().map(MonomialOp::inverse).collect();
    Ok(word.0.iter().fold(MonomialOp::identity(r, dim), |acc, &s| {
        let k = s.unsigned_abs() as usize - 1;
        acc.compose(if s > 0 { &gens[k] } else { &invs[k] })
    }))
}

/// Verify `(B1)` and `(B2)` for `ops[k-1] = β_k`, `n = ops.len() + 1`.
pub fn check_braid_relations(ops: &[MonomialOp]) -> Result<(), RelationViolation> {
    for w in ops.windows(2) {
        if w[0].dim() != w[1].dim() || w[0].r() != w[1].r() {
            return Err(RelationViolation::B1 { i: 0 });
        }
    }
    for i in 0..ops.len().saturating_sub(1) {
        let (a, b) = (&ops[i], &ops[i + 1]);
        if a.compose(b).compose(a) != b.compose(a).compose(b) {
            return Err(RelationViolation::B1 { i: i + 1 });
        }
    }
    for i in 0..ops.len() {
        for j in i + 2..ops.len() {
            if ops[i].compose(&ops[j]) != ops[j].compose(&ops[i]) {
                return Err(RelationViolation::B2 { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cocycle::Cocycle3;
    use crate::double::{AssociatorSign, Conventions};

    fn rep(group: FiniteGroup, cocycle: Option<u32>, n: usize) -> TensorPowerRep {
        let m = group.order();
        let w = match cocycle {
            Some(q) => Cocycle3::cyclic(m, q).unwrap(),
            None => Cocycle3::trivial(Arc::new(group), m as u32),
        };
        TensorPowerRep::new(TwistedDouble::new(w), n).unwrap()
    }

    fn cyclic_rep(m: usize, q: Option<u32>, n: usize) -> TensorPowerRep {
        rep(FiniteGroup::cyclic(m).unwrap(), q, n)
    }

    #[test]
    fn label_round_trip() {
        let t = cyclic_rep(3, None, 3);
        assert_eq!(t.dim(), 729);
        for idx in 0..t.dim() {
            assert_eq!(t.encode(&t.decode(idx)), idx);
        }
        assert_eq!(t.decode(1).pairs, vec![(0, 0), (0, 0), (0, 1)]);
        assert_eq!(t.decode(9 * 9).pairs, vec![(0, 1), (0, 0), (0, 0)]);
    }

    #[test]
    fn raw_r_check_on_z2() {
        let t = cyclic_rep(2, None, 2);
        let op = t.r_check_raw(1).unwrap();
        let src = t.encode(&Label { pairs: vec![(1, 0), (1, 1)] });
        let dst = t.encode(&Label { pairs: vec![(1, 0), (1, 0)] });
        assert_eq!(op.perm()[src] as usize, dst);
        assert_eq!(op.scal()[src], 0);
        assert!(op.scal().iter().all(|&s| s == 0));
        assert!(t.r_check_raw(2).is_err());
        assert!(t.r_check_raw(0).is_err());
    }

    #[test]
    fn trivial_group_gives_identity() {
        let t = rep(FiniteGroup::trivial(), None, 4);
        for i in 1..4 {
            assert!(t.braid_generator(i).unwrap().is_identity());
        }
    }

    #[test]
    fn trivial_cocycle_needs_no_rebracketing() {
        for m in [2, 3, 4] {
            let t = cyclic_rep(m, None, 3);
            for i in 1..3 {
                assert_eq!(t.braid_generator(i).unwrap(), t.r_check_raw(i).unwrap());
            }
        }
        let s3 = rep(FiniteGroup::symmetric(3).unwrap(), None, 2);
        assert_eq!(s3.braid_generator(1).unwrap(), s3.r_check_raw(1).unwrap());
    }

    #[test]
    fn rebracket_is_path_independent() {
        for n in [4, 5] {
            let t = cyclic_rep(2, Some(1), n);
            let trees = tree::all_trees(0..n);
            for a in trees.iter().step_by(2) {
                for b in trees.iter().step_by(3) {
                    let via_right = t.rebracket(a, b).unwrap();
                    let via_bfs = t.rebracket_along(&ParenTree::bfs_path(a, b).unwrap());
                    let via_left = t
                        .rebracket_along(&b.path_to_left_comb())
                        .inverse()
                        .compose(&t.rebracket_along(&a.path_to_left_comb()));
                    assert_eq!(via_right, via_bfs);
                    assert_eq!(via_right, via_left);
                }
            }
        }
        let t = cyclic_rep(4, Some(1), 4);
        let lc = ParenTree::left_comb(4);
        assert!(t.rebracket(&lc, &lc).unwrap().is_identity());
        assert!(!t.rebracket(&lc, &ParenTree::right_comb(4)).unwrap().is_identity());
    }

    #[test]
    fn braid_relations_for_builtin_instances() {
        let groups: Vec<(FiniteGroup, Option<u32>)> = vec![
            (FiniteGroup::cyclic(2).unwrap(), None),
            (FiniteGroup::cyclic(2).unwrap(), Some(1)),
            (FiniteGroup::cyclic(3).unwrap(), Some(1)),
            (FiniteGroup::cyclic(3).unwrap(), Some(2)),
            (FiniteGroup::cyclic(4).unwrap(), Some(1)),
            (FiniteGroup::cyclic(4).unwrap(), Some(3)),
        ];
        for (g, q) in groups {
            for n in 2..=4 {
                let t = rep(g.clone(), q, n);
                let ops = t.braid_generators().unwrap();
                assert_eq!(check_braid_relations(&ops), Ok(()), "{} q={q:?} n={n}", g.name());
            }
        }
    }

    #[test]
    fn braid_relations_do_not_see_the_associator_sign() {
        let s3 = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let sign_map = [0, 1, 1, 0, 0, 1];
        let pulled = Cocycle3::pullback(s3, &sign_map, &Cocycle3::cyclic(2, 1).unwrap()).unwrap();
        let cocycles = [Cocycle3::cyclic(3, 1).unwrap(), Cocycle3::cyclic(4, 1).unwrap(), pulled];
        for w in cocycles {
            for sign in [AssociatorSign::Plus, AssociatorSign::Minus] {
                let conv = Conventions::FROZEN.with_associator(sign);
                let t = TensorPowerRep::new(TwistedDouble::with_conventions(w.clone(), conv), 3).unwrap();
                assert_eq!(check_braid_relations(&t.braid_generators().unwrap()), Ok(()));
                let raw: Vec<_> = (1..3).map(|i| t.r_check_raw(i).unwrap()).collect();
                assert_eq!(check_braid_relations(&raw), Ok(()));
            }
        }
    }

    #[test]
    fn squared_generator_breaks_relations() {
        let t = cyclic_rep(2, Some(1), 3);
        let mut ops = t.braid_generators().unwrap();
        ops[0] = ops[0].compose(&ops[0]);
        assert!(check_braid_relations(&ops).is_err());
        let id = MonomialOp::identity(2, 64);
        assert!(check_braid_relations(&[id.clone(), id]).is_ok());
    }

    #[test]
    fn words_and_band_generators() {
        let t = cyclic_rep(2, Some(1), 3);
        assert!(t.apply_word(&BraidWord::default()).unwrap().is_identity());
        let b1 = t.braid_generator(1).unwrap();
        let b2 = t.braid_generator(2).unwrap();
        assert_eq!(t.pure_braid_generator(1, 2).unwrap(), b1.compose(&b1));
        let a13 = b2.compose(&b1).compose(&b1).compose(&b2.inverse());
        assert_eq!(t.pure_braid_generator(1, 3).unwrap(), a13);
        assert_eq!(BraidWord::band(4, 1, 4).unwrap().0, vec![3, 2, 1, 1, -2, -3]);
        assert!(BraidWord::band(3, 2, 2).is_err());
        assert!(t.apply_word(&BraidWord(vec![3])).is_err());
        let pures = t.pure_braid_generators().unwrap();
        assert_eq!(pures.len(), 3);
        // pure braids act trivially on positions: permutation parts fix
        // the group-label multiset only up to the braid action, but
        // their images under the strand map are the identity
        assert_eq!(pures[1], a13);
    }

    #[test]
    fn psi_action_matches_permutation_part() {
        for m in [2, 4] {
            for n in [2, 3] {
                let t = cyclic_rep(m, None, n);
                let grp = t.group().clone();
                for i in 1..n {
                    let op = t.braid_generator(i).unwrap();
                    let psi = free::psi_generator(n, i).unwrap();
                    for idx in 0..t.dim() {
                        let label = t.decode(idx);
                        let mut tuple = vec![0; 2 * n];
                        for (k, &(x, g)) in label.pairs.iter().enumerate() {
                            tuple[k] = g;
                            tuple[n + k] = grp.conj(grp.inv(g), x);
                        }
                        let image = psi.act_on_tuple(&grp, &tuple);
                        let pairs = (0..n).map(|k| (grp.conj(image[k], image[n + k]), image[k])).collect();
                        assert_eq!(op.perm()[idx] as usize, t.encode(&Label { pairs }));
                    }
                }
            }
        }
    }
}
