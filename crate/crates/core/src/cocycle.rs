//! Normalized 3-cocycles `ω: G³ → μ_r`, stored as exponents, and the
//! 2-cochains `θ` and `γ` they induce on the twisted double.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupElement};
use crate::scalars::RootExponent;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CocycleError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cocycle is not normalized: w({a},{b},{c}) = {e} but an argument is the identity")]
    NotNormalized { a: usize, b: usize, c: usize, e: u32 },
    #[error("cocycle spec `{spec}` does not apply to group {group}: {why}")]
    Incompatible { spec: String, group: String, why: String },
    #[error("bad cocycle spec `{0}`")]
    BadSpec(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("cochains live on different groups or root orders")]
    Mismatch,
}

/// Which formula is used for `θ_x(g,h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThetaVariant {
    /// `ω(x,g,h)·ω(h,h,h⁻¹g⁻¹xgh) / ω(g,g⁻¹xg,h)`
    Printed,
    /// `ω(x,g,h)·ω(g,h,(gh)⁻¹x(gh)) / ω(g,g⁻¹xg,h)`
    Standard,
}

/// The variant under which the twisted double is associative; the printed
/// reading fails the associativity suite already on `Z/2`.
pub const THETA_VARIANT: ThetaVariant = ThetaVariant::Standard;

impl fmt::Display for ThetaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaVariant::Printed => "printed",
            ThetaVariant::Standard => "standard",
        })
    }
}

/// A failing instance of the cocycle identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CocycleViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a,b,c,d) = ({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Debug)]
pub struct Cocycle3 {
    group: Arc<FiniteGroup>,
    r: u32,
    w: Vec<u32>,
    id: String,
}

impl PartialEq for Cocycle3 {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.w == other.w && self.group == other.group
    }
}

impl Cocycle3 {
    /// Build from a table of exponents indexed `(a·n + b)·n + c`. Only
    /// normalization is enforced; the cocycle identity is checked
    /// separately by [`Cocycle3::check`].
    pub fn from_table(
        group: Arc<FiniteGroup>,
        r: u32,
        table: Vec<u32>,
        id: impl Into<String>,
    ) -> Result<Self, CocycleError> {
        let n = group.order();
        if r == 0 {
            return Err(CocycleError::Parse { line: 0, msg: "r must be positive".into() });
        }
        assert_eq!(table.len(), n * n * n, "cocycle table has wrong size");
        let w: Vec<u32> = table.into_iter().map(|e| e % r).collect();
        let cocycle = Self { group, r, w, id: id.into() };
        cocycle.check_normalized()?;
        Ok(cocycle)
    }

    fn check_normalized(&self) -> Result<(), CocycleError> {
        let n = self.group.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let e = self.exp(a, b, c);
                    if (a == 0 || b == 0 || c == 0) && e != 0 {
                        return Err(CocycleError::NotNormalized { a, b, c, e });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>, r: u32) -> Self {
        let n = group.order();
        Self { group, r: r.max(1), w: vec![0; n * n * n], id: "trivial".into() }
    }

    /// Pull `base` back along a homomorphism `phi: group → base.group()`,
    /// given as the image of each element.
    pub fn pullback(group: Arc<FiniteGroup>, phi: &[usize], base: &Cocycle3) -> Result<Self, CocycleError> {
        let n = group.order();
        let target = base.group();
        if phi.len() != n || phi.iter().any(|&v| v >= target.order()) {
            return Err(CocycleError::BadSpec("map has the wrong size or range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if phi[group.mul(a, b)] != target.mul(phi[a], phi[b]) {
                    return Err(CocycleError::BadSpec(format!("map is not a homomorphism at ({a},{b})")));
                }
            }
        }
        let mut w = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    w.push(base.exp(phi[a], phi[b], phi[c]));
                }
            }
        }
        let id = format!("pullback:{}", base.id());
        Self::from_table(group, base.r(), w, id)
    }

    /// `ŵ(a,b,c) = q·a·⌊(b+c)/m⌋ mod m` on `Z/m`, with `r = m`.
    pub fn cyclic(m: usize, q: u32) -> Result<Self, CocycleError> {
        let group = Arc::new(FiniteGroup::cyclic(m).map_err(|e| CocycleError::BadSpec(e.to_string()))?);
        Self::cyclic_on(group, q)
    }

    fn cyclic_on(group: Arc<FiniteGroup>, q: u32) -> Result<Self, CocycleError> {
        let m = group.order();
        if q as usize >= m {
            return Err(CocycleError::BadSpec(format!("cyclic:{q} needs 0 <= q < {m}")));
        }
        let mut w = Vec::with_capacity(m * m * m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    w.push(((q as usize * a * ((b + c) / m)) % m) as u32);
                }
            }
        }
        Ok(Self { group, r: m as u32, w, id: format!("cyclic:{q}") })
    }

    /// Parse the cocycle file format: `r R`, then lines `a b c e`.
    pub fn from_str_for(group: Arc<FiniteGroup>, text: &str, id: impl Into<String>) -> Result<Self, CocycleError> {
        let n = group.order();
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(CocycleError::Parse { line: 0, msg: "empty file".into() })?;
        let r: u32 = header
            .strip_prefix('r')
            .and_then(|rest| rest.trim().parse().ok())
            .filter(|&r| r > 0)
            .ok_or_else(|| CocycleError::Parse { line: hline, msg: format!("expected `r R`, got `{header}`") })?;
        let mut w = vec![0u32; n * n * n];
        for (lineno, line) in lines {
            let nums: Vec<u64> = line
                .split_whitespace()
                .map(|t| t.parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CocycleError::Parse { line: lineno, msg: format!("non-integer token in `{line}`") })?;
            let [a, b, c, e] = nums[..] else {
                return Err(CocycleError::Parse { line: lineno, msg: "expected `a b c e`".into() });
            };
            if [a, b, c].iter().any(|&v| v as usize >= n) {
                return Err(CocycleError::Parse {
                    line: lineno,
                    msg: format!("element index out of range [0, {n})"),
                });
            }
            w[(a as usize * n + b as usize) * n + c as usize] = (e % r as u64) as u32;
        }
        Self::from_table(group, r, w, id)
    }

    pub fn from_file(group: Arc<FiniteGroup>, path: &Path) -> Result<Self, CocycleError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CocycleError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Self::from_str_for(group, &text, format!("file:{}", path.display()))
    }

    pub fn to_file_string(&self) -> String {
        let n = self.group.order();
        let mut out = format!("r {}\n", self.r);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let e = self.exp(a, b, c);
                    if e != 0 {
                        out.push_str(&format!("{a} {b} {c} {e}\n"));
                    }
                }
            }
        }
        out
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn is_trivial(&self) -> bool {
        self.w.iter().all(|&e| e == 0)
    }

    pub fn table(&self) -> &[u32] {
        &self.w
    }

    #[inline]
    pub fn exp(&self, a: GroupElement, b: GroupElement, c: GroupElement) -> u32 {
        let n = self.group.order();
        self.w[(a * n + b) * n + c]
    }

    pub fn value(&self, a: GroupElement, b: GroupElement, c: GroupElement) -> RootExponent {
        RootExponent::new(self.r, self.exp(a, b, c) as i64).expect("r > 0")
    }

    /// Exhaustive check of `ω(a,b,c)ω(a,bc,d)ω(b,c,d) = ω(ab,c,d)ω(a,b,cd)`.
    pub fn check(&self) -> Result<(), CocycleViolation> {
        let g = &*self.group;
        let n = g.order();
        let r = self.r as u64;
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    let bc = g.mul(b, c);
                    let wabc = self.exp(a, b, c) as u64;
                    for d in 0..n {
                        let cd = g.mul(c, d);
                        let lhs = wabc + self.exp(a, bc, d) as u64 + self.exp(b, c, d) as u64;
                        let rhs = self.exp(ab, c, d) as u64 + self.exp(a, b, cd) as u64;
                        if lhs % r != rhs % r {
                            return Err(CocycleViolation { a, b, c, d });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Pointwise product `ω·ω'` (exponent addition).
    pub fn multiply(&self, other: &Cocycle3) -> Result<Cocycle3, CocycleError> {
        if self.r != other.r || self.group != other.group {
            return Err(CocycleError::Mismatch);
        }
        let w = self.w.iter().zip(&other.w).map(|(a, b)| (a + b) % self.r).collect();
        Ok(Self { group: self.group.clone(), r: self.r, w, id: format!("{}*{}", self.id, other.id) })
    }

    /// Same table with one entry changed; used to exercise failure paths.
    pub fn perturbed(&self, a: usize, b: usize, c: usize, delta: u32) -> Cocycle3 {
        let n = self.group.order();
        let mut w = self.w.clone();
        let idx = (a * n + b) * n + c;
        w[idx] = (w[idx] + delta) % self.r;
        Self { group: self.group.clone(), r: self.r, w, id: format!("{}~perturbed", self.id) }
    }

    pub fn theta(&self, x: GroupElement, g: GroupElement, h: GroupElement) -> RootExponent {
        self.theta_with(THETA_VARIANT, x, g, h)
    }

    /// Exponent of `θ_x(g,h)` under the chosen reading.
    pub fn theta_with(&self, variant: ThetaVariant, x: GroupElement, g: GroupElement, h: GroupElement) -> RootExponent {
        let grp = &*self.group;
        let gh = grp.mul(g, h);
        let x_g = grp.conj(grp.inv(g), x); // g⁻¹xg
        let x_gh = grp.conj(grp.inv(gh), x); // (gh)⁻¹x(gh)
        let middle = match variant {
            ThetaVariant::Printed => self.exp(h, h, x_gh),
            ThetaVariant::Standard => self.exp(g, h, x_gh),
        };
        let e = self.exp(x, g, h) as i64 + middle as i64 - self.exp(g, x_g, h) as i64;
        RootExponent::new(self.r, e).expect("r > 0")
    }

    /// Exponent of `γ_g(y,z) = ω(y,z,g)·ω(g,g⁻¹yg,g⁻¹zg) / ω(y,g,g⁻¹zg)`.
    pub fn gamma(&self, g: GroupElement, y: GroupElement, z: GroupElement) -> RootExponent {
        let grp = &*self.group;
        let gi = grp.inv(g);
        let y_g = grp.conj(gi, y);
        let z_g = grp.conj(gi, z);
        let e = self.exp(y, z, g) as i64 + self.exp(g, y_g, z_g) as i64 - self.exp(y, g, z_g) as i64;
        RootExponent::new(self.r, e).expect("r > 0")
    }

    /// First `(x,g,h,k)` violating
    /// `θ_x(g,h)·θ_x(gh,k) = θ_x(g,hk)·θ_{g⁻¹xg}(h,k)`, the identity that is
    /// equivalent to associativity of the twisted double.
    pub fn theta_identity_violation(&self, variant: ThetaVariant) -> Option<[usize; 4]> {
        let grp = &*self.group;
        let n = grp.order();
        let r = self.r;
        for x in 0..n {
            for g in 0..n {
                let xg = grp.conj(grp.inv(g), x);
                for h in 0..n {
                    let gh = grp.mul(g, h);
                    let t1 = self.theta_with(variant, x, g, h).exponent();
                    for k in 0..n {
                        let lhs = t1 + self.theta_with(variant, x, gh, k).exponent();
                        let rhs = self.theta_with(variant, x, g, grp.mul(h, k)).exponent()
                            + self.theta_with(variant, xg, h, k).exponent();
                        if lhs % r != rhs % r {
                            return Some([x, g, h, k]);
                        }
                    }
                }
            }
        }
        None
    }
}

/// A normalized 2-cochain `μ: G² → μ_r`.
#[derive(Clone, Debug)]
pub struct Cochain2 {
    group: Arc<FiniteGroup>,
    r: u32,
    table: Vec<u32>,
}

impl Cochain2 {
    /// Entries with an identity argument are forced to zero.
    pub fn new(group: Arc<FiniteGroup>, r: u32, mut table: Vec<u32>) -> Self {
        let n = group.order();
        assert_eq!(table.len(), n * n, "cochain table has wrong size");
        for a in 0..n {
            for b in 0..n {
                let v = &mut table[a * n + b];
                *v = if a == 0 || b == 0 { 0 } else { *v % r };
            }
        }
        Self { group, r, table }
    }

    pub fn zero(group: Arc<FiniteGroup>, r: u32) -> Self {
        let n = group.order();
        Self::new(group, r, vec![0; n * n])
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.table[a * self.group.order() + b]
    }

    /// `(dμ)(a,b,c) = μ(b,c) − μ(ab,c) + μ(a,bc) − μ(a,b)`.
    pub fn coboundary(&self) -> Cocycle3 {
        let g = &*self.group;
        let n = g.order();
        let r = self.r as i64;
        let mut w = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let e = self.get(b, c) as i64 - self.get(g.mul(a, b), c) as i64 + self.get(a, g.mul(b, c)) as i64
                        - self.get(a, b) as i64;
                    w.push(e.rem_euclid(r) as u32);
                }
            }
        }
        Cocycle3 { group: self.group.clone(), r: self.r, w, id: "coboundary".into() }
    }
}

/// Parse a cocycle spec (`trivial | cyclic:q | file:<path>`) against `group`.
pub fn parse_cocycle_spec(group: Arc<FiniteGroup>, spec: &str) -> Result<Cocycle3, CocycleError> {
    let spec = spec.trim();
    match spec.split_once(':') {
        None if spec == "trivial" => {
            let r = group.order() as u32;
            Ok(Cocycle3::trivial(group, r))
        }
        Some(("cyclic", q)) => {
            let q: u32 = q.parse().map_err(|_| CocycleError::BadSpec(spec.into()))?;
            let m = group.order();
            let is_cyclic = FiniteGroup::cyclic(m).map(|c| c == *group).unwrap_or(false);
            if !is_cyclic {
                return Err(CocycleError::Incompatible {
                    spec: spec.into(),
                    group: group.name().into(),
                    why: "cyclic cocycles need the group cyclic:m with its residue ordering".into(),
                });
            }
            Cocycle3::cyclic_on(group, q)
        }
        Some(("file", path)) => Cocycle3::from_file(group, Path::new(path)),
        _ => Err(CocycleError::BadSpec(spec.into())),
    }
}
