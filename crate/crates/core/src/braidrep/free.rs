//! Free groups `F_{2n}` on letters `g_1..g_n, x_1..x_n` and the
//! automorphisms `ψ(β_i)` describing the braid action on basis labels.
//!
//! Letter numbering: `g_k` is generator `k - 1`, `x_k` is generator
//! `n + k - 1`. Tuples in `G^{2n}` use the same layout.

use std::fmt;

use crate::group::{FiniteGroup, GroupElement};

use super::BraidError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Self {
        Self { gen: self.gen, inverse: !self.inverse }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn gen(gen: usize) -> Self {
        Self(vec![Letter { gen, inverse: false }])
    }

    /// Build from letters, reducing as it goes.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        Self::from_letters(self.0.iter().chain(&other.0).copied())
    }

    /// Replace each generator `k` by `images[k]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        Self::from_letters(self.0.iter().flat_map(|l| {
            let w = &images[l.gen];
            if l.inverse {
                w.inverse().0
            } else {
                w.0.clone()
            }
        }))
    }

    /// Evaluate in `G` with generator `k` sent to `assignment[k]`.
    pub fn evaluate(&self, group: &FiniteGroup, assignment: &[GroupElement]) -> GroupElement {
        self.0.iter().fold(0, |acc, l| {
            let v = assignment[l.gen];
            group.mul(acc, if l.inverse { group.inv(v) } else { v })
        })
    }

    pub fn display(&self, n: usize) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let (name, k) = if l.gen < n { ("g", l.gen + 1) } else { ("x", l.gen - n + 1) };
                format!("{name}{k}{}", if l.inverse { "^-1" } else { "" })
            })
            .collect();
        parts.join(" ")
    }
}

/// An automorphism of `F_{2n}` with an explicit inverse witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAutomorphism {
    n: usize,
    images: Vec<FreeWord>,
    inverse_images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn identity(n: usize) -> Self {
        let images: Vec<_> = (0..2 * n).map(FreeWord::gen).collect();
        Self { n, images: images.clone(), inverse_images: images }
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn g(&self, k: usize) -> usize {
        k - 1
    }

    pub fn x(&self, k: usize) -> usize {
        self.n + k - 1
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[FreeWord] {
        &self.inverse_images
    }

    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        w.substitute(&self.images)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &FreeAutomorphism) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            images: other.images.iter().map(|w| w.substitute(&self.images)).collect(),
            inverse_images: self.inverse_images.iter().map(|w| w.substitute(&other.inverse_images)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { n: self.n, images: self.inverse_images.clone(), inverse_images: self.images.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| *w == FreeWord::gen(k))
    }

    /// Whether the stored inverse really inverts the images on both sides.
    pub fn inverse_witness_holds(&self) -> bool {
        let fwd = Self { n: self.n, images: self.images.clone(), inverse_images: self.images.clone() };
        let bwd = Self { n: self.n, images: self.inverse_images.clone(), inverse_images: self.inverse_images.clone() };
        fwd.compose(&bwd).is_identity() && bwd.compose(&fwd).is_identity()
    }

    /// Evaluate the images at a tuple of `G^{2n}`.
    pub fn act_on_tuple(&self, group: &FiniteGroup, tuple: &[GroupElement]) -> Vec<GroupElement> {
        self.images.iter().map(|w| w.evaluate(group, tuple)).collect()
    }
}

impl fmt::Display for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.images.iter().enumerate() {
            let src = FreeWord::gen(k).display(self.n);
            writeln!(f, "{src} -> {}", w.display(self.n))?;
        }
        Ok(())
    }
}

/// `ψ(β_i)`: `x_i ↦ x_{i+1}`, `x_{i+1} ↦ x_i`, `g_i ↦ g_i x_i g_i⁻¹ g_{i+1}`,
/// `g_{i+1} ↦ g_i`, everything else fixed.
pub fn psi_generator(n: usize, i: usize) -> Result<FreeAutomorphism, BraidError> {
    if i == 0 || i >= n {
        return Err(BraidError::IndexOutOfRange { index: i, n });
    }
    let mut aut = FreeAutomorphism::identity(n);
    let (gi, gj, xi, xj) = (aut.g(i), aut.g(i + 1), aut.x(i), aut.x(i + 1));
    let l = |gen, inverse| Letter { gen, inverse };
    aut.images[xi] = FreeWord::gen(xj);
    aut.images[xj] = FreeWord::gen(xi);
    aut.images[gi] = FreeWord::from_letters([l(gi, false), l(xi, false), l(gi, true), l(gj, false)]);
    aut.images[gj] = FreeWord::gen(gi);

    aut.inverse_images[xi] = FreeWord::gen(xj);
    aut.inverse_images[xj] = FreeWord::gen(xi);
    aut.inverse_images[gi] = FreeWord::gen(gj);
    aut.inverse_images[gj] = FreeWord::from_letters([l(gj, false), l(xj, true), l(gj, true), l(gi, false)]);
    Ok(aut)
}

/// Image of a braid word (signed 1-based generator indices), composed in
/// word order.
pub fn psi_word(n: usize, word: &[i32]) -> Result<FreeAutomorphism, BraidError> {
    word.iter().try_fold(FreeAutomorphism::identity(n), |acc, &s| {
        let gen = psi_generator(n, s.unsigned_abs() as usize)?;
        Ok(acc.compose(&if s > 0 { gen } else { gen.inverse() }))
    })
}

/// The action of `β_i` on `G^{2n}`: substitute the tuple into `ψ(β_i)`.
pub fn psi_tuple_action(
    group: &FiniteGroup,
    n: usize,
    i: usize,
    tuple: &[GroupElement],
) -> Result<Vec<GroupElement>, BraidError> {
    if tuple.len() != 2 * n {
        return Err(BraidError::Invalid(format!("tuple has {} entries, expected {}", tuple.len(), 2 * n)));
    }
    Ok(psi_generator(n, i)?.act_on_tuple(group, tuple))
}
