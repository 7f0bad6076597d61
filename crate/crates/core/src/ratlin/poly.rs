//! Univariate polynomials over exact rationals: arithmetic, gcd, Sturm
//! sequences, and rational root extraction with an irrationality certificate.

use super::rat::{rat_one, rat_to_string, sign, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial with ascending coefficients; the zero polynomial has no
/// coefficients. The leading coefficient is nonzero otherwise.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => rat_to_string(c),
                1 => format!("{}*x", rat_to_string(c)),
                _ => format!("{}*x^{}", rat_to_string(c), k),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::from_coeffs(vec![rat_one()])
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        QPoly::from_coeffs(vec![Rat::zero(), rat_one()])
    }

    /// `x - r`.
    pub fn x_minus(r: &Rat) -> Self {
        QPoly::from_coeffs(vec![-r.clone(), rat_one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 by convention of callers
    /// that have already excluded it.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let lead = self.leading();
        QPoly::from_coeffs(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division. Panics on zero divisor.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.degree() < divisor.degree() || self.is_zero() {
            return (QPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dl = divisor.leading();
        let dd = divisor.degree();
        let mut quot = vec![Rat::zero(); self.degree() - dd + 1];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &dl;
            quot[k - dd] = q.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let delta = c * &q;
                rem[k - dd + j] -= delta;
            }
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &QPoly) -> QPoly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
            .collect();
        QPoly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    /// `p / gcd(p, p')`, monic: same roots, all simple.
    pub fn squarefree_part(&self) -> QPoly {
        assert!(!self.is_zero(), "squarefree part of the zero polynomial");
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    /// True iff `gcd(p, p')` is constant.
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero(), "squarefree test on the zero polynomial");
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Drop all factors of `x`, returning (stripped, multiplicity of root 0).
    pub fn strip_root_zero(&self) -> (QPoly, usize) {
        if self.is_zero() {
            return (QPoly::zero(), 0);
        }
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        (QPoly::from_coeffs(self.coeffs[k..].to_vec()), k)
    }
}

/// Sturm chain of the squarefree part of `p`.
fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() && chain.last().unwrap().degree() > 0 {
        let n = chain.len();
        let rem = chain[n - 2].div_rem(&chain[n - 1]).1;
        if rem.is_zero() {
            break;
        }
        chain.push(rem.neg());
    }
    chain
}

fn sign_changes<I: Iterator<Item = i32>>(signs: I) -> usize {
    let mut changes = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn variations_at(chain: &[QPoly], x: &Rat) -> usize {
    sign_changes(chain.iter().map(|p| sign(&p.eval(x))))
}

fn variations_at_pos_inf(chain: &[QPoly]) -> usize {
    sign_changes(chain.iter().map(|p| sign(&p.leading())))
}

fn variations_at_neg_inf(chain: &[QPoly]) -> usize {
    sign_changes(chain.iter().map(|p| {
        let s = sign(&p.leading());
        if p.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
/// Requires `p(a) != 0`.
pub fn count_distinct_roots_in(p: &QPoly, a: &Rat, b: &Rat) -> usize {
    assert!(!p.is_zero());
    let q = p.squarefree_part();
    assert!(!q.eval(a).is_zero(), "left endpoint is a root");
    let chain = sturm_chain(&q);
    variations_at(&chain, a) - variations_at(&chain, b)
}

/// Number of distinct real roots of `p` on the whole line.
pub fn count_distinct_real_roots(p: &QPoly) -> usize {
    assert!(!p.is_zero());
    let q = p.squarefree_part();
    let chain = sturm_chain(&q);
    variations_at_neg_inf(&chain) - variations_at_pos_inf(&chain)
}

/// Number of distinct real roots of `p` in `(0, +inf)`, by Sturm counting on
/// the squarefree part with the zero root stripped first.
pub fn count_distinct_positive_roots(p: &QPoly) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    let (stripped, _) = p.strip_root_zero();
    if stripped.degree() == 0 {
        return 0;
    }
    let q = stripped.squarefree_part();
    let chain = sturm_chain(&q);
    variations_at(&chain, &Rat::zero()) - variations_at_pos_inf(&chain)
}

/// A root bound: all real roots of `p` lie in `(-M, M)`.
fn cauchy_bound(p: &QPoly) -> Rat {
    let lead = p.leading();
    let mut m = Rat::zero();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let t = (c / &lead).abs();
        if t > m {
            m = t;
        }
    }
    m + rat_one()
}

/// The rational with smallest denominator in the closed interval `[lo, hi]`
/// (ties broken toward smaller numerator magnitude by the construction).
pub fn simplest_rational_in(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi.clone(), &-lo.clone())
    } else {
        Rat::zero()
    }
}

fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    // Continued-fraction walk: if an integer lies in the interval take the
    // smallest one, otherwise recurse on the fractional parts.
    let ceil_lo = lo.ceil();
    if &ceil_lo <= hi {
        return ceil_lo;
    }
    let f = lo.floor();
    let inv = simplest_positive(
        &(rat_one() / (hi - f.clone())),
        &(rat_one() / (lo - f.clone())),
    );
    f + rat_one() / inv
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("polynomial has a real root that is not rational")]
    IrrationalRealRoot,
    #[error("polynomial has non-real roots")]
    NonRealRoots,
}

/// All roots of `p` with multiplicities, provided every root is rational.
/// Roots are returned in strictly decreasing order.
pub fn rational_spectrum(p: &QPoly) -> Result<Vec<(Rat, usize)>, SpectrumError> {
    assert!(!p.is_zero());
    let mut roots: Vec<Rat> = Vec::new();
    let (stripped, zero_mult) = p.strip_root_zero();
    if zero_mult > 0 {
        roots.push(Rat::zero());
    }
    let q = stripped.squarefree_part();
    if q.degree() > 0 {
        let real_roots = count_distinct_real_roots(&q);
        if real_roots < q.degree() {
            return Err(SpectrumError::NonRealRoots);
        }
        roots.extend(isolate_rational_roots(&q)?);
    }
    roots.sort();
    roots.reverse();
    let mut out = Vec::with_capacity(roots.len());
    let mut rem = p.clone();
    for r in roots {
        let lin = QPoly::x_minus(&r);
        let mut mult = 0;
        loop {
            let (quot, rest) = rem.div_rem(&lin);
            if rest.is_zero() {
                rem = quot;
                mult += 1;
            } else {
                break;
            }
        }
        debug_assert!(mult > 0);
        out.push((r, mult));
    }
    Ok(out)
}

/// Distinct roots of a squarefree polynomial whose real roots are all
/// rational; errors out with a certificate if any real root is irrational.
fn isolate_rational_roots(q: &QPoly) -> Result<Vec<Rat>, SpectrumError> {
    let chain = sturm_chain(q);
    let count = |a: &Rat, b: &Rat| -> usize { variations_at(&chain, a) - variations_at(&chain, b) };

    // Denominators of rational roots divide the leading coefficient of the
    // integer-cleared polynomial; once an isolating interval is narrower than
    // 1/L^2 the smallest-denominator rational inside it is the only rational
    // candidate left.
    let mut den_lcm = BigInt::one();
    for c in q.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let lead_int = (q.leading() * Rat::from_integer(den_lcm)).numer().abs();
    let width_target = rat_one() / Rat::from_integer(&lead_int * &lead_int * BigInt::from(2));

    let bound = cauchy_bound(q);
    let mut roots = Vec::new();
    // Work list of (a, b] intervals with their root counts; a is never a root.
    let mut stack = vec![(-bound.clone(), bound.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && &b - &a < width_target {
            let cand = simplest_rational_in(&a, &b);
            if q.eval(&cand).is_zero() {
                roots.push(cand);
                continue;
            }
            return Err(SpectrumError::IrrationalRealRoot);
        }
        let mid = (&a + &b) / Rat::from_integer(BigInt::from(2));
        if q.eval(&mid).is_zero() {
            roots.push(mid.clone());
            // Nudge past the root so interval endpoints stay non-roots.
            let eps = (&b - &a) / Rat::from_integer(BigInt::from(1 << 20));
            stack.push((a, &mid - &eps));
            stack.push((&mid + &eps, b));
        } else {
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
    }
    Ok(roots)
}
