//! Elements of the full monomial group `G(r,1,m)`.

use std::fmt::Write as _;

use crate::group::GroupOps;

use super::BraidError;

/// Hard cap on the dimension of a dense operator.
pub const MAX_DIM: usize = 1 << 22;

/// A monomial operator acting by `v_i ↦ ζ_r^{scal[i]} · v_{perm[i]}`.
///
/// Ordering and hashing are byte-wise over `(r, perm, scal)`, which is the
/// canonical order used for closures and reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialOp {
    r: u32,
    perm: Vec<u32>,
    scal: Vec<u32>,
}

impl MonomialOp {
    pub fn new(r: u32, perm: Vec<u32>, scal: Vec<u32>) -> Result<Self, BraidError> {
        let dim = perm.len();
        if r == 0 {
            return Err(BraidError::Invalid("r must be positive".into()));
        }
        if dim > MAX_DIM {
            return Err(BraidError::DimensionCap { dim });
        }
        if scal.len() != dim {
            return Err(BraidError::Invalid(format!("perm has {dim} entries but scal has {}", scal.len())));
        }
        let mut seen = vec![false; dim];
        for &p in &perm {
            let p = p as usize;
            if p >= dim || seen[p] {
                return Err(BraidError::Invalid("perm is not a bijection".into()));
            }
            seen[p] = true;
        }
        if let Some(&s) = scal.iter().find(|&&s| s >= r) {
            return Err(BraidError::Invalid(format!("scalar exponent {s} not reduced mod {r}")));
        }
        Ok(Self { r, perm, scal })
    }

    pub(crate) fn from_parts_unchecked(r: u32, perm: Vec<u32>, scal: Vec<u32>) -> Self {
        debug_assert_eq!(perm.len(), scal.len());
        Self { r, perm, scal }
    }

    pub fn identity(r: u32, dim: usize) -> Self {
        Self { r, perm: (0..dim as u32).collect(), scal: vec![0; dim] }
    }

    pub fn diagonal(r: u32, scal: Vec<u32>) -> Self {
        let dim = scal.len();
        Self { r, perm: (0..dim as u32).collect(), scal: scal.into_iter().map(|s| s % r).collect() }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn scal(&self) -> &[u32] {
        &self.scal
    }

    pub fn is_identity(&self) -> bool {
        self.scal.iter().all(|&s| s == 0) && self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MonomialOp) -> MonomialOp {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in compose");
        assert_eq!(self.r, other.r, "root order mismatch in compose");
        let r = self.r;
        let mut perm = Vec::with_capacity(self.dim());
        let mut scal = Vec::with_capacity(self.dim());
        for (&p, &s) in other.perm.iter().zip(&other.scal) {
            perm.push(self.perm[p as usize]);
            let t = s + self.scal[p as usize];
            scal.push(if t >= r { t - r } else { t });
        }
        Self { r, perm, scal }
    }

    pub fn inverse(&self) -> MonomialOp {
        let dim = self.dim();
        let mut perm = vec![0u32; dim];
        let mut scal = vec![0u32; dim];
        for (i, (&p, &s)) in self.perm.iter().zip(&self.scal).enumerate() {
            perm[p as usize] = i as u32;
            scal[p as usize] = (self.r - s) % self.r;
        }
        Self { r: self.r, perm, scal }
    }

    pub fn pow(&self, k: u64) -> MonomialOp {
        let mut result = Self::identity(self.r, self.dim());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        result
    }

    /// Least `k ≤ cap` with `self^k = 1`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=cap {
            if x.is_identity() {
                return Some(k);
            }
            x = x.compose(self);
        }
        None
    }

    /// Exact order from the cycle decomposition: a cycle of length `l`
    /// whose scalars sum to `ζ^s` contributes `l · ord(ζ^s)`. `None` on
    /// overflow.
    pub fn cycle_order(&self) -> Option<u64> {
        let r = self.r as u64;
        let mut seen = vec![false; self.dim()];
        let mut order: u64 = 1;
        for start in 0..self.dim() {
            if seen[start] {
                continue;
            }
            let (mut len, mut total, mut i) = (0u64, 0u64, start);
            while !seen[i] {
                seen[i] = true;
                total += self.scal[i] as u64;
                len += 1;
                i = self.perm[i] as usize;
            }
            let twist = r / num_integer::gcd(r, total % r);
            let cycle = len.checked_mul(twist)?;
            order = num_integer::lcm(order, cycle);
            if order > u64::MAX / 2 {
                return None;
            }
        }
        Some(order)
    }

    /// Operator restricted to its permutation part.
    pub fn permutation_part(&self) -> MonomialOp {
        Self { r: self.r, perm: self.perm.clone(), scal: vec![0; self.dim()] }
    }

    /// `monop v1` text: header, `r R dim M`, then `i perm[i] scal[i]`.
    pub fn to_monop_string(&self) -> String {
        let mut out = String::with_capacity(16 * self.dim() + 32);
        let _ = writeln!(out, "monop v1");
        let _ = writeln!(out, "r {} dim {}", self.r, self.dim());
        for (i, (p, s)) in self.perm.iter().zip(&self.scal).enumerate() {
            let _ = writeln!(out, "{i} {p} {s}");
        }
        out
    }

    pub fn from_monop_str(text: &str) -> Result<Self, BraidError> {
        let parse_err = |line: usize, msg: &str| BraidError::Parse { line, msg: msg.to_string() };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        match lines.next() {
            Some((_, "monop v1")) => {}
            _ => return Err(parse_err(1, "expected `monop v1`")),
        }
        let (hl, header) = lines.next().ok_or_else(|| parse_err(2, "missing `r R dim M` line"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let (r, dim) = match toks[..] {
            ["r", r, "dim", m] => (
                r.parse::<u32>().map_err(|_| parse_err(hl, "bad r"))?,
                m.parse::<usize>().map_err(|_| parse_err(hl, "bad dim"))?,
            ),
            _ => return Err(parse_err(hl, "expected `r R dim M`")),
        };
        if dim > MAX_DIM {
            return Err(BraidError::DimensionCap { dim });
        }
        let mut perm = vec![u32::MAX; dim];
        let mut scal = vec![0u32; dim];
        let mut count = 0;
        for (lineno, line) in lines.filter(|(_, l)| !l.is_empty()) {
            let nums: Vec<u64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err(lineno, "non-integer token"))?;
            let [i, p, s] = nums[..] else {
                return Err(parse_err(lineno, "expected `i perm scal`"));
            };
            if i as usize != count || count >= dim {
                return Err(parse_err(lineno, "rows must be numbered 0..dim in order"));
            }
            perm[count] = u32::try_from(p).map_err(|_| parse_err(lineno, "perm out of range"))?;
            scal[count] = u32::try_from(s).map_err(|_| parse_err(lineno, "scalar out of range"))?;
            count += 1;
        }
        if count != dim {
            return Err(parse_err(text.lines().count(), "fewer rows than dim"));
        }
        Self::new(r, perm, scal)
    }
}

/// `G(r,1,m)` viewed through [`GroupOps`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialGroup {
    pub r: u32,
    pub dim: usize,
}

impl GroupOps for MonomialGroup {
    type Elem = MonomialOp;

    fn identity(&self) -> MonomialOp {
        MonomialOp::identity(self.r, self.dim)
    }

    fn op(&self, a: &MonomialOp, b: &MonomialOp) -> MonomialOp {
        a.compose(b)
    }

    fn inverse(&self, a: &MonomialOp) -> MonomialOp {
        a.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_op(r: u32, dim: usize) -> impl Strategy<Value = MonomialOp> {
        (Just((0..dim as u32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(0..r, dim))
            .prop_map(move |(perm, scal)| MonomialOp::new(r, perm, scal).unwrap())
    }

    #[test]
    fn validation() {
        assert!(MonomialOp::new(2, vec![0, 0], vec![0, 0]).is_err());
        assert!(MonomialOp::new(2, vec![1, 0], vec![0, 2]).is_err());
        assert!(MonomialOp::new(2, vec![1, 0], vec![0]).is_err());
        assert!(MonomialOp::new(2, vec![1, 0], vec![1, 1]).is_ok());
    }

    #[test]
    fn orders() {
        assert_eq!(MonomialOp::identity(3, 5).order(10), Some(1));
        let cyc = MonomialOp::new(4, vec![1, 2, 0], vec![1, 0, 0]).unwrap();
        // cube is the scalar ζ₄, so order 12
        assert_eq!(cyc.order(100), Some(12));
        assert_eq!(cyc.order(11), None);
        assert_eq!(cyc.pow(12), MonomialOp::identity(4, 3));
    }

    #[test]
    fn monop_parse_errors() {
        assert!(MonomialOp::from_monop_str("monop v2\n").is_err());
        assert!(MonomialOp::from_monop_str("monop v1\nr 2 dim 2\n0 1 0\n").is_err());
        assert!(MonomialOp::from_monop_str("monop v1\nr 2 dim 2\n0 1 0\n2 0 0\n").is_err());
        let ok = MonomialOp::from_monop_str("monop v1\nr 2 dim 2\n0 1 1\n1 0 0\n").unwrap();
        assert_eq!(ok.perm(), &[1, 0]);
    }

    proptest! {
        #[test]
        fn serialization_round_trip(op in arb_op(6, 9)) {
            prop_assert_eq!(MonomialOp::from_monop_str(&op.to_monop_string()).unwrap(), op);
        }

        #[test]
        fn cycle_order_matches_iteration(op in arb_op(6, 6)) {
            prop_assert_eq!(op.cycle_order(), op.order(10_000));
        }

        #[test]
        fn group_laws(a in arb_op(4, 7), b in arb_op(4, 7), c in arb_op(4, 7)) {
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert!(a.inverse().compose(&a).is_identity());
            // permutation part is a homomorphism
            prop_assert_eq!(a.compose(&b).permutation_part(), a.permutation_part().compose(&b.permutation_part()));
        }
    }
}
