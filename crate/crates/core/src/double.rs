//! The twisted quantum double `D^ω(G)`.
//!
//! Basis elements `δ_x·ḡ` are written `(x, g)`. Products of basis elements
//! are monomials:
//!
//! ```text
//! (δ_x ḡ)(δ_y h̄) = θ_x(g,h) · [x = g y g⁻¹] · δ_x (gh)
//! ```
//!
//! The unit is `Σ_g δ_g ē`, the coproduct is
//! `Δ(δ_x ḡ) = Σ_{yz=x} γ_g(y,z) δ_y ḡ ⊗ δ_z ḡ`, `R = Σ_g δ_g ⊗ ḡ`, and the
//! associator is `Φ = Σ ω(a,b,c)^ε δ_a ⊗ δ_b ⊗ δ_c`. The conventions that are
//! not forced by the formulas alone (θ reading, second coproduct factor,
//! the sign `ε`) live in [`Conventions`]; [`Conventions::FROZEN`] is the
//! combination under which every structure check passes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cocycle::{Cocycle3, ThetaVariant, THETA_VARIANT};
use crate::group::GroupElement;
use crate::scalars::{CycInt, RootExponent};

/// The basis element `δ_x·ḡ`, ordered lexicographically in `(x, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubleBasis {
    pub x: GroupElement,
    pub g: GroupElement,
}

impl DoubleBasis {
    pub fn new(x: GroupElement, g: GroupElement) -> Self {
        Self { x, g }
    }
}

impl fmt::Display for DoubleBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}.g{}", self.x, self.g)
    }
}

/// How the second tensor factor of `Δ(δ_x ḡ)` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoproductReading {
    /// `δ_y ḡ ⊗ δ_x ḡ`, literally as typeset.
    Printed,
    /// `δ_y ḡ ⊗ δ_z ḡ`, matching the summation over `yz = x`.
    Factored,
}

pub const COPRODUCT_READING: CoproductReading = CoproductReading::Factored;

/// Sign `ε` of the associator exponent `ε·ŵ(u,v,t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AssociatorSign {
    Plus,
    Minus,
}

impl AssociatorSign {
    pub fn factor(self) -> i64 {
        match self {
            AssociatorSign::Plus => 1,
            AssociatorSign::Minus => -1,
        }
    }
}

/// `Φ = Σ ω(a,b,c)⁻¹ δ_a⊗δ_b⊗δ_c`. With the opposite sign the hexagon
/// identities fail for `Z/3` and `Z/4`; quasi-coassociativity and the
/// braid relations on regular tensor powers hold for either sign.
pub const ASSOCIATOR_SIGN: AssociatorSign = AssociatorSign::Minus;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub theta: ThetaVariant,
    pub coproduct: CoproductReading,
    pub associator: AssociatorSign,
}

impl Conventions {
    pub const FROZEN: Conventions =
        Conventions { theta: THETA_VARIANT, coproduct: COPRODUCT_READING, associator: ASSOCIATOR_SIGN };

    pub fn with_theta(self, theta: ThetaVariant) -> Self {
        Self { theta, ..self }
    }

    pub fn with_coproduct(self, coproduct: CoproductReading) -> Self {
        Self { coproduct, ..self }
    }

    pub fn with_associator(self, associator: AssociatorSign) -> Self {
        Self { associator, ..self }
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Self::FROZEN
    }
}

/// Finitely supported linear combination of basis elements. Zero
/// coefficients are never stored.
#[derive(Debug, Clone)]
pub struct AlgElement {
    r: u32,
    terms: BTreeMap<DoubleBasis, CycInt>,
}

impl AlgElement {
    pub fn zero(r: u32) -> Self {
        Self { r, terms: BTreeMap::new() }
    }

    pub fn basis(r: u32, b: DoubleBasis) -> Self {
        let mut e = Self::zero(r);
        e.add_term(b, CycInt::one(r));
        e
    }

    pub fn add_term(&mut self, b: DoubleBasis, c: CycInt) {
        let entry = self.terms.entry(b).or_insert_with(|| CycInt::zero(self.r));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> &BTreeMap<DoubleBasis, CycInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl PartialEq for AlgElement {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((ka, va), (kb, vb))| ka == kb && va == vb)
    }
}

/// Element of `D^ω(G) ⊗ D^ω(G)`.
#[derive(Debug, Clone)]
pub struct TensorElement {
    r: u32,
    terms: BTreeMap<(DoubleBasis, DoubleBasis), CycInt>,
}

impl TensorElement {
    pub fn zero(r: u32) -> Self {
        Self { r, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, b: (DoubleBasis, DoubleBasis), c: CycInt) {
        let entry = self.terms.entry(b).or_insert_with(|| CycInt::zero(self.r));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn terms(&self) -> &BTreeMap<(DoubleBasis, DoubleBasis), CycInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `σ(a ⊗ b) = b ⊗ a`
    pub fn flip(&self) -> Self {
        let mut out = Self::zero(self.r);
        for (&(a, b), c) in &self.terms {
            out.add_term((b, a), c.clone());
        }
        out
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((ka, va), (kb, vb))| ka == kb && va == vb)
    }
}

type Triple = (DoubleBasis, DoubleBasis, DoubleBasis);

/// Element of the triple tensor power, used for quasi-coassociativity.
#[derive(Debug, Clone)]
struct TripleElement {
    r: u32,
    terms: BTreeMap<Triple, CycInt>,
}

impl TripleElement {
    fn zero(r: u32) -> Self {
        Self { r, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, b: Triple, c: CycInt) {
        let entry = self.terms.entry(b).or_insert_with(|| CycInt::zero(self.r));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    fn same_as(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((ka, va), (kb, vb))| ka == kb && va == vb)
    }
}

/// Witness for a failed structure check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureViolation {
    pub check: &'static str,
    pub witness: Vec<DoubleBasis>,
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.witness.iter().map(ToString::to_string).collect();
        write!(f, "{} fails at [{}]", self.check, w.join(", "))
    }
}

/// `D^ω(G)` for a fixed cocycle and conventions.
#[derive(Debug, Clone)]
pub struct TwistedDouble {
    cocycle: Cocycle3,
    conv: Conventions,
}

impl TwistedDouble {
    pub fn new(cocycle: Cocycle3) -> Self {
        Self::with_conventions(cocycle, Conventions::FROZEN)
    }

    pub fn with_conventions(cocycle: Cocycle3, conv: Conventions) -> Self {
        Self { cocycle, conv }
    }

    pub fn cocycle(&self) -> &Cocycle3 {
        &self.cocycle
    }

    pub fn conventions(&self) -> Conventions {
        self.conv
    }

    pub fn r(&self) -> u32 {
        self.cocycle.r()
    }

    pub fn dimension(&self) -> usize {
        self.cocycle.group().order().pow(2)
    }

    pub fn basis(&self) -> impl Iterator<Item = DoubleBasis> + '_ {
        let n = self.cocycle.group().order();
        (0..n).flat_map(move |x| (0..n).map(move |g| DoubleBasis::new(x, g)))
    }

    pub fn theta(&self, x: GroupElement, g: GroupElement, h: GroupElement) -> RootExponent {
        self.cocycle.theta_with(self.conv.theta, x, g, h)
    }

    pub fn gamma(&self, g: GroupElement, y: GroupElement, z: GroupElement) -> RootExponent {
        self.cocycle.gamma(g, y, z)
    }

    /// `ε·ŵ(u,v,t)`: the scalar by which the associativity isomorphism acts
    /// on three grouped tensor segments whose `x`-products are `u, v, t`.
    pub fn associator_exponent(&self, u: GroupElement, v: GroupElement, t: GroupElement) -> RootExponent {
        let e = self.conv.associator.factor() * self.cocycle.exp(u, v, t) as i64;
        RootExponent::new(self.r(), e).expect("r > 0")
    }

    /// Product of two basis elements: `None` when it vanishes.
    pub fn basis_mul(&self, b1: DoubleBasis, b2: DoubleBasis) -> Option<(RootExponent, DoubleBasis)> {
        let grp = self.cocycle.group();
        let (x, g) = (b1.x, b1.g);
        let (y, h) = (b2.x, b2.g);
        if x != grp.conj(g, y) {
            return None;
        }
        Some((self.theta(x, g, h), DoubleBasis::new(x, grp.mul(g, h))))
    }

    pub fn mul(&self, a: &AlgElement, b: &AlgElement) -> AlgElement {
        let mut out = AlgElement::zero(self.r());
        for (&ba, ca) in &a.terms {
            for (&bb, cb) in &b.terms {
                if let Some((root, basis)) = self.basis_mul(ba, bb) {
                    out.add_term(basis, (ca * cb).mul_root(root).expect("same r"));
                }
            }
        }
        out
    }

    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.r());
        for (&(a1, a2), ca) in &a.terms {
            for (&(b1, b2), cb) in &b.terms {
                let (Some((r1, p1)), Some((r2, p2))) = (self.basis_mul(a1, b1), self.basis_mul(a2, b2)) else {
                    continue;
                };
                let root = r1.mul(r2).expect("same r");
                out.add_term((p1, p2), (ca * cb).mul_root(root).expect("same r"));
            }
        }
        out
    }

    fn triple_mul(&self, a: &TripleElement, b: &TripleElement) -> TripleElement {
        let mut out = TripleElement::zero(self.r());
        for (&(a1, a2, a3), ca) in &a.terms {
            for (&(b1, b2, b3), cb) in &b.terms {
                let (Some((r1, p1)), Some((r2, p2)), Some((r3, p3))) =
                    (self.basis_mul(a1, b1), self.basis_mul(a2, b2), self.basis_mul(a3, b3))
                else {
                    continue;
                };
                let root = r1.mul(r2).and_then(|r| r.mul(r3)).expect("same r");
                out.add_term((p1, p2, p3), (ca * cb).mul_root(root).expect("same r"));
            }
        }
        out
    }

    /// `Σ_g δ_g ē`
    pub fn unit(&self) -> AlgElement {
        let mut u = AlgElement::zero(self.r());
        for g in self.cocycle.group().elements() {
            u.add_term(DoubleBasis::new(g, 0), CycInt::one(self.r()));
        }
        u
    }

    pub fn unit_tensor_unit(&self) -> TensorElement {
        let n = self.cocycle.group().order();
        let mut out = TensorElement::zero(self.r());
        for x in 0..n {
            for y in 0..n {
                out.add_term((DoubleBasis::new(x, 0), DoubleBasis::new(y, 0)), CycInt::one(self.r()));
            }
        }
        out
    }

    /// `ε(δ_x ḡ) = [x = e]`
    pub fn counit(&self, b: DoubleBasis) -> u32 {
        u32::from(b.x == 0)
    }

    pub fn coproduct(&self, b: DoubleBasis) -> TensorElement {
        let grp = self.cocycle.group();
        let mut out = TensorElement::zero(self.r());
        for y in grp.elements() {
            let z = grp.mul(grp.inv(y), b.x);
            let second = match self.conv.coproduct {
                CoproductReading::Printed => b.x,
                CoproductReading::Factored => z,
            };
            let coeff = CycInt::from_root(self.gamma(b.g, y, z));
            out.add_term((DoubleBasis::new(y, b.g), DoubleBasis::new(second, b.g)), coeff);
        }
        out
    }

    pub fn coproduct_of(&self, a: &AlgElement) -> TensorElement {
        let mut out = TensorElement::zero(self.r());
        for (&b, c) in &a.terms {
            for (&k, v) in &self.coproduct(b).terms {
                out.add_term(k, c * v);
            }
        }
        out
    }

    /// `R = Σ_g δ_g ⊗ ḡ`, expanded as `Σ_{g,y} δ_g ē ⊗ δ_y ḡ`.
    pub fn r_matrix(&self) -> TensorElement {
        let n = self.cocycle.group().order();
        let mut out = TensorElement::zero(self.r());
        for g in 0..n {
            for y in 0..n {
                out.add_term((DoubleBasis::new(g, 0), DoubleBasis::new(y, g)), CycInt::one(self.r()));
            }
        }
        out
    }

    /// `R⁻¹ = Σ_{g,h} θ_{ghg⁻¹}(g,g⁻¹)⁻¹ δ_g ē ⊗ δ_h g⁻¹`
    pub fn r_matrix_inv(&self) -> TensorElement {
        let grp = self.cocycle.group();
        let mut out = TensorElement::zero(self.r());
        for g in grp.elements() {
            let gi = grp.inv(g);
            for h in grp.elements() {
                let scale = self.theta(grp.conj(g, h), g, gi).inv();
                out.add_term((DoubleBasis::new(g, 0), DoubleBasis::new(h, gi)), CycInt::from_root(scale));
            }
        }
        out
    }

    // ---- structure checks ------------------------------------------------

    /// `(ab)c = a(bc)` over basis triples; `stride > 1` samples the triples
    /// `(a, b, c)` whose linear index is divisible by `stride`.
    pub fn check_associativity(&self, stride: usize) -> Result<usize, StructureViolation> {
        let basis: Vec<_> = self.basis().collect();
        let d = basis.len();
        let r = self.r();
        let mut checked = 0;
        for (idx, (i, j, k)) in (0..d)
            .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
            .enumerate()
        {
            if idx % stride.max(1) != 0 {
                continue;
            }
            let (a, b, c) =
                (AlgElement::basis(r, basis[i]), AlgElement::basis(r, basis[j]), AlgElement::basis(r, basis[k]));
            let left = self.mul(&self.mul(&a, &b), &c);
            let right = self.mul(&a, &self.mul(&b, &c));
            if left != right {
                return Err(StructureViolation { check: "associativity", witness: vec![basis[i], basis[j], basis[k]] });
            }
            checked += 1;
        }
        Ok(checked)
    }

    pub fn check_unit(&self) -> Result<(), StructureViolation> {
        let u = self.unit();
        for b in self.basis() {
            let a = AlgElement::basis(self.r(), b);
            if self.mul(&u, &a) != a || self.mul(&a, &u) != a {
                return Err(StructureViolation { check: "unit", witness: vec![b] });
            }
        }
        Ok(())
    }

    /// `(ε⊗id)Δ(a) = a = (id⊗ε)Δ(a)` for every basis element.
    pub fn check_counit(&self) -> Result<(), StructureViolation> {
        for b in self.basis() {
            let expect = AlgElement::basis(self.r(), b);
            let mut left = AlgElement::zero(self.r());
            let mut right = AlgElement::zero(self.r());
            for (&(p, q), c) in self.coproduct(b).terms() {
                if self.counit(p) == 1 {
                    left.add_term(q, c.clone());
                }
                if self.counit(q) == 1 {
                    right.add_term(p, c.clone());
                }
            }
            if left != expect || right != expect {
                return Err(StructureViolation { check: "counit", witness: vec![b] });
            }
        }
        Ok(())
    }

    /// `Δ(ab) = Δ(a)Δ(b)` for all basis pairs.
    pub fn check_coproduct_multiplicative(&self) -> Result<(), StructureViolation> {
        let basis: Vec<_> = self.basis().collect();
        let deltas: Vec<_> = basis.iter().map(|&b| self.coproduct(b)).collect();
        for (i, &a) in basis.iter().enumerate() {
            for (j, &b) in basis.iter().enumerate() {
                let ab = self.mul(&AlgElement::basis(self.r(), a), &AlgElement::basis(self.r(), b));
                if self.coproduct_of(&ab) != self.tensor_mul(&deltas[i], &deltas[j]) {
                    return Err(StructureViolation { check: "coproduct multiplicativity", witness: vec![a, b] });
                }
            }
        }
        Ok(())
    }

    /// `R·R⁻¹ = R⁻¹·R = 1 ⊗ 1`
    pub fn check_r_inverse(&self) -> Result<(), StructureViolation> {
        let (r, ri, one) = (self.r_matrix(), self.r_matrix_inv(), self.unit_tensor_unit());
        if self.tensor_mul(&r, &ri) != one {
            return Err(StructureViolation { check: "R*R^-1 = 1", witness: vec![] });
        }
        if self.tensor_mul(&ri, &r) != one {
            return Err(StructureViolation { check: "R^-1*R = 1", witness: vec![] });
        }
        Ok(())
    }

    /// `R·Δ(a)·R⁻¹ = σ(Δ(a))` for every basis element.
    pub fn check_quasitriangular(&self) -> Result<(), StructureViolation> {
        let (r, ri) = (self.r_matrix(), self.r_matrix_inv());
        for b in self.basis() {
            let delta = self.coproduct(b);
            let conj = self.tensor_mul(&self.tensor_mul(&r, &delta), &ri);
            if conj != delta.flip() {
                return Err(StructureViolation { check: "R Delta(a) R^-1 = Delta^op(a)", witness: vec![b] });
            }
        }
        Ok(())
    }

    fn phi(&self) -> TripleElement {
        let n = self.cocycle.group().order();
        let mut out = TripleElement::zero(self.r());
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let coeff = CycInt::from_root(self.associator_exponent(a, b, c));
                    out.add_term((DoubleBasis::new(a, 0), DoubleBasis::new(b, 0), DoubleBasis::new(c, 0)), coeff);
                }
            }
        }
        out
    }

    /// `(id⊗Δ)(Δ(a))·Φ = Φ·(Δ⊗id)(Δ(a))` for every basis element.
    pub fn check_quasi_coassociative(&self) -> Result<(), StructureViolation> {
        let phi = self.phi();
        for b in self.basis() {
            let delta = self.coproduct(b);
            let mut left = TripleElement::zero(self.r());
            let mut right = TripleElement::zero(self.r());
            for (&(p, q), c) in &delta.terms {
                for (&(q1, q2), c2) in &self.coproduct(q).terms {
                    left.add_term((p, q1, q2), c * c2);
                }
                for (&(p1, p2), c1) in &self.coproduct(p).terms {
                    right.add_term((p1, p2, q), c * c1);
                }
            }
            if !self.triple_mul(&left, &phi).same_as(&self.triple_mul(&phi, &right)) {
                return Err(StructureViolation { check: "quasi-coassociativity", witness: vec![b] });
            }
        }
        Ok(())
    }

    /// `Φ` with its legs moved: leg `k` goes to slot `slots[k]`, and the
    /// exponent is negated for `Φ⁻¹`.
    fn phi_legs(&self, slots: [usize; 3], inverse: bool) -> TripleElement {
        let n = self.cocycle.group().order();
        let mut out = TripleElement::zero(self.r());
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut e = self.associator_exponent(a, b, c);
                    if inverse {
                        e = e.inv();
                    }
                    let mut key = [DoubleBasis::new(0, 0); 3];
                    for (leg, x) in [a, b, c].into_iter().enumerate() {
                        key[slots[leg]] = DoubleBasis::new(x, 0);
                    }
                    out.add_term((key[0], key[1], key[2]), CycInt::from_root(e));
                }
            }
        }
        out
    }

    /// `R` placed on two of the three slots, the unit on the third.
    fn r_legs(&self, first: usize, second: usize) -> TripleElement {
        let n = self.cocycle.group().order();
        let spare = 3 - first - second;
        let mut out = TripleElement::zero(self.r());
        for g in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut key = [DoubleBasis::new(0, 0); 3];
                    key[first] = DoubleBasis::new(g, 0);
                    key[second] = DoubleBasis::new(y, g);
                    key[spare] = DoubleBasis::new(z, 0);
                    out.add_term((key[0], key[1], key[2]), CycInt::one(self.r()));
                }
            }
        }
        out
    }

    /// The two hexagon identities
    /// `(Δ⊗id)(R) = Φ₃₁₂ R₁₃ Φ₁₃₂⁻¹ R₂₃ Φ` and
    /// `(id⊗Δ)(R) = Φ₂₃₁⁻¹ R₁₃ Φ₂₁₃ R₁₂ Φ⁻¹`.
    pub fn check_hexagons(&self) -> Result<(), StructureViolation> {
        let m = |a: &TripleElement, b: &TripleElement| self.triple_mul(a, b);
        let mut delta_left = TripleElement::zero(self.r());
        let mut delta_right = TripleElement::zero(self.r());
        for (&(p, q), c) in &self.r_matrix().terms {
            for (&(p1, p2), c1) in &self.coproduct(p).terms {
                delta_left.add_term((p1, p2, q), c * c1);
            }
            for (&(q1, q2), c2) in &self.coproduct(q).terms {
                delta_right.add_term((p, q1, q2), c * c2);
            }
        }
        let phi = self.phi_legs([0, 1, 2], false);
        let rhs = m(
            &m(&m(&m(&self.phi_legs([2, 0, 1], false), &self.r_legs(0, 2)), &self.phi_legs([0, 2, 1], true)), &self.r_legs(1, 2)),
            &phi,
        );
        if !delta_left.same_as(&rhs) {
            return Err(StructureViolation { check: "hexagon (Delta x id)(R)", witness: vec![] });
        }
        let rhs = m(
            &m(&m(&m(&self.phi_legs([1, 2, 0], true), &self.r_legs(0, 2)), &self.phi_legs([1, 0, 2], false)), &self.r_legs(0, 1)),
            &self.phi_legs([0, 1, 2], true),
        );
        if !delta_right.same_as(&rhs) {
            return Err(StructureViolation { check: "hexagon (id x Delta)(R)", witness: vec![] });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use std::sync::Arc;

    fn doubles() -> Vec<TwistedDouble> {
        let mut v = Vec::new();
        for m in [1usize, 2, 3, 4] {
            for q in 0..m as u32 {
                v.push(TwistedDouble::new(Cocycle3::cyclic(m, q).unwrap()));
            }
        }
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v4 = Arc::new(FiniteGroup::product(&z2, &z2));
        v.push(TwistedDouble::new(Cocycle3::trivial(v4, 4)));
        v.push(TwistedDouble::new(Cocycle3::trivial(Arc::new(FiniteGroup::symmetric(3).unwrap()), 6)));
        v
    }

    #[test]
    fn basis_products() {
        let d = TwistedDouble::new(Cocycle3::cyclic(2, 0).unwrap());
        let (root, b) = d.basis_mul(DoubleBasis::new(1, 1), DoubleBasis::new(1, 1)).unwrap();
        assert!(root.is_one());
        assert_eq!(b, DoubleBasis::new(1, 0));
        assert_eq!(d.basis_mul(DoubleBasis::new(1, 0), DoubleBasis::new(0, 1)), None);
        let s3 = TwistedDouble::new(Cocycle3::trivial(Arc::new(FiniteGroup::symmetric(3).unwrap()), 6));
        let grp = s3.cocycle().group().clone();
        for x in 0..6 {
            for g in 0..6 {
                for y in 0..6 {
                    let prod = s3.basis_mul(DoubleBasis::new(x, g), DoubleBasis::new(y, 0));
                    assert_eq!(prod.is_some(), x == grp.conj(g, y));
                }
            }
        }
    }

    #[test]
    fn structure_checks_pass() {
        for d in doubles() {
            let name = format!("{} / {}", d.cocycle().group().name(), d.cocycle().id());
            assert!(d.check_associativity(1).is_ok(), "{name}");
            assert!(d.check_unit().is_ok(), "{name}");
            assert!(d.check_counit().is_ok(), "{name}");
            assert!(d.check_coproduct_multiplicative().is_ok(), "{name}");
            assert!(d.check_r_inverse().is_ok(), "{name}");
            if d.cocycle().group().order() <= 4 {
                assert_eq!(d.check_quasitriangular(), Ok(()), "{name}");
                assert_eq!(d.check_quasi_coassociative(), Ok(()), "{name}");
                assert_eq!(d.check_hexagons(), Ok(()), "{name}");
            }
        }
    }

    #[test]
    fn hexagons_fix_the_associator_sign() {
        for m in [3, 4] {
            let w = Cocycle3::cyclic(m, 1).unwrap();
            let plus = TwistedDouble::with_conventions(w.clone(), Conventions::FROZEN.with_associator(AssociatorSign::Plus));
            let minus = TwistedDouble::with_conventions(w, Conventions::FROZEN.with_associator(AssociatorSign::Minus));
            assert!(plus.check_hexagons().is_err());
            assert!(minus.check_hexagons().is_ok());
            assert!(plus.check_quasi_coassociative().is_ok());
        }
        assert_eq!(ASSOCIATOR_SIGN, AssociatorSign::Minus);
    }

    #[test]
    fn printed_theta_breaks_associativity() {
        let w = Cocycle3::cyclic(2, 1).unwrap();
        let d = TwistedDouble::with_conventions(w, Conventions::FROZEN.with_theta(ThetaVariant::Printed));
        assert!(d.check_associativity(1).is_err());
    }

    #[test]
    fn printed_coproduct_is_not_multiplicative() {
        let w = Cocycle3::cyclic(2, 1).unwrap();
        let d = TwistedDouble::with_conventions(w, Conventions::FROZEN.with_coproduct(CoproductReading::Printed));
        assert!(d.check_coproduct_multiplicative().is_err());
        // With ω trivial the printed form is still an algebra map; the counit
        // law rules it out.
        let w = Cocycle3::cyclic(4, 0).unwrap();
        let d = TwistedDouble::with_conventions(w, Conventions::FROZEN.with_coproduct(CoproductReading::Printed));
        assert!(d.check_coproduct_multiplicative().is_ok());
        assert!(d.check_counit().is_err());
    }

    #[test]
    fn quasi_coassociativity_is_sign_blind_on_abelian_groups() {
        // Conjugation is trivial, so the Φ factors on both sides cancel.
        for (m, q) in [(3, 1), (4, 1)] {
            for sign in [AssociatorSign::Plus, AssociatorSign::Minus] {
                let w = Cocycle3::cyclic(m, q).unwrap();
                let d = TwistedDouble::with_conventions(w, Conventions::FROZEN.with_associator(sign));
                assert!(d.check_quasi_coassociative().is_ok());
            }
        }
    }

    #[test]
    fn unit_and_r_shapes() {
        let d = TwistedDouble::new(Cocycle3::cyclic(3, 2).unwrap());
        assert_eq!(d.unit().len(), 3);
        assert_eq!(d.r_matrix().len(), 9);
        assert_eq!(d.dimension(), 9);
        for b in d.basis() {
            assert_eq!(d.coproduct(b).len(), 3);
        }
        let triv = TwistedDouble::new(Cocycle3::cyclic(3, 0).unwrap());
        for (&(a, b), c) in triv.r_matrix_inv().terms() {
            assert_eq!(a.g, 0);
            assert_eq!(b.g, triv.cocycle().group().inv(a.x));
            assert_eq!(*c, CycInt::one(3));
        }
        for c in triv.coproduct(DoubleBasis::new(2, 1)).terms().values() {
            assert_eq!(*c, CycInt::one(3));
        }
    }

    #[test]
    fn associator_normalized() {
        let d = TwistedDouble::new(Cocycle3::cyclic(2, 1).unwrap());
        assert!(d.associator_exponent(0, 1, 1).is_one());
        assert_eq!(d.associator_exponent(1, 1, 1).exponent(), 1);
        let t = TwistedDouble::new(Cocycle3::cyclic(2, 0).unwrap());
        assert!(t.associator_exponent(1, 1, 1).is_one());
    }
}
