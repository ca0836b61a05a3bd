//! Real-root counting and isolation for rational-coefficient polynomials.
//!
//! The counting primitive is the canonical Sturm chain (f, f', then negated
//! remainders); sign-variation differences count distinct real roots on
//! half-open intervals. Isolation makes the input squarefree, detects every
//! rational root exactly by candidate enumeration over divisors of the
//! trailing and leading integer coefficients, and brackets the remaining
//! irrational roots by bisection from the Cauchy bound.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{primitive_part_rational, squarefree_part, UniPoly};
use super::ring::Ring;
use super::{BigRational, ExactError};

/// An interval containing exactly one real root of the target polynomial.
/// Rational roots are reported exactly, with `lo == hi == root`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact_root: Option<BigRational>,
}

impl IsolatingInterval {
    fn exact(root: BigRational) -> Self {
        Self {
            lo: root.clone(),
            hi: root.clone(),
            exact_root: Some(root),
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// Midpoint as an `f64`, for reporting.
    pub fn midpoint_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

/// Canonical Sturm chain of `f`: the sequence f, f', and then the negated
/// Euclidean remainders, ending just before the zero polynomial.
pub fn sturm_sequence(f: &UniPoly<BigRational>) -> Result<Vec<UniPoly<BigRational>>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let mut chain = vec![f.clone()];
    let d = f.derivative();
    if d.is_zero() {
        return Ok(chain);
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            return Ok(chain);
        }
        chain.push(-r);
    }
}

fn sign_variations(chain: &[UniPoly<BigRational>], x: &BigRational) -> usize {
    let mut last: Option<bool> = None;
    let mut variations = 0;
    for g in chain {
        let v = g.eval(x);
        if v.is_zero() {
            continue;
        }
        let positive = v.is_positive();
        if let Some(prev) = last {
            if prev != positive {
                variations += 1;
            }
        }
        last = Some(positive);
    }
    variations
}

/// Number of distinct real roots of `f` in the half-open interval `(a, b]`,
/// for `a < b` with neither endpoint a root of `f`.
pub fn count_real_roots_in(
    f: &UniPoly<BigRational>,
    a: &BigRational,
    b: &BigRational,
) -> Result<usize, ExactError> {
    let chain = sturm_sequence(f)?;
    Ok(count_with_chain(&chain, a, b))
}

fn count_with_chain(chain: &[UniPoly<BigRational>], a: &BigRational, b: &BigRational) -> usize {
    debug_assert!(a < b);
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Cauchy root bound: every real root of `f` lies strictly inside
/// `(-B, B)` with `B = 1 + max_i |a_i| / |a_n|`.
pub fn cauchy_bound(f: &UniPoly<BigRational>) -> BigRational {
    let lead = f.leading_coeff().expect("bound of zero polynomial").abs();
    let max_ratio = f
        .coeffs()
        .iter()
        .take(f.coeffs().len() - 1)
        .map(|c| c.abs() / lead.clone())
        .max()
        .unwrap_or_else(BigRational::zero);
    max_ratio + BigRational::one()
}

// Divisor enumeration stays affordable only for small magnitudes; above these
// caps candidates are skipped and the affected roots are still isolated, just
// not labeled exact.
const DIVISOR_ENUM_LIMIT: u64 = 1_000_000_000_000;
const CANDIDATE_PAIR_LIMIT: usize = 100_000;

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_ENUM_LIMIT {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    Some(divs)
}

/// All rational roots of a squarefree integer-coefficient polynomial, found
/// by exact evaluation of the +-(p/q) candidates with p | trailing and
/// q | leading coefficient. Returns roots in increasing order.
fn rational_roots(g: &UniPoly<BigRational>) -> Vec<BigRational> {
    let mut roots = Vec::new();
    let mut h = g.clone();

    // Factor out x^k first so the trailing coefficient is nonzero.
    if !h.is_zero() && h.coeff(0).is_zero() {
        roots.push(BigRational::zero());
        let x = UniPoly::new(
            h.var().to_string(),
            vec![BigRational::zero(), BigRational::one()],
        );
        while h.coeff(0).is_zero() && h.degree().is_some_and(|d| d > 0) {
            h = h.exact_div(&x);
        }
    }
    if h.degree().is_none_or(|d| d == 0) {
        roots.sort();
        return roots;
    }

    let trailing = h.coeff(0).numer().clone();
    let leading = h.leading_coeff().unwrap().numer().clone();
    let (Some(ps), Some(qs)) = (small_divisors(&trailing), small_divisors(&leading)) else {
        return roots;
    };
    if ps.len() * qs.len() > CANDIDATE_PAIR_LIMIT {
        return roots;
    }
    let mut candidates: Vec<BigRational> = Vec::new();
    for &p in &ps {
        for &q in &qs {
            let r = BigRational::new(BigInt::from(p), BigInt::from(q));
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        if h.eval(&r).is_zero() {
            // Squarefree input: each root is simple, deflate once.
            let factor = UniPoly::new(h.var().to_string(), vec![-r.clone(), BigRational::one()]);
            h = h.exact_div(&factor);
            roots.push(r);
        }
    }
    roots.sort();
    roots
}

fn bisect(lo: &BigRational, hi: &BigRational) -> BigRational {
    (lo + hi) / BigRational::from_integer(2.into())
}

/// Isolates every distinct real root of `f`.
///
/// Returned intervals are pairwise disjoint, each containing exactly one real
/// root of `f`; rational roots come back exact. The zero polynomial is an
/// error; constants isolate to nothing.
pub fn isolate_real_roots(f: &UniPoly<BigRational>) -> Result<Vec<IsolatingInterval>, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let sf = squarefree_part(f);
    let (g, _) = primitive_part_rational(&sf);
    if g.degree().is_none_or(|d| d == 0) {
        return Ok(vec![]);
    }

    let rationals = rational_roots(&g);

    // Deflate all exact roots; what remains has only irrational real roots,
    // so no rational bisection point can ever be a root of it.
    let mut h = g.clone();
    for r in &rationals {
        let factor = UniPoly::new(h.var().to_string(), vec![-r.clone(), BigRational::one()]);
        h = h.exact_div(&factor);
    }

    let mut brackets: Vec<(BigRational, BigRational)> = Vec::new();
    if h.degree().is_some_and(|d| d > 0) {
        let chain = sturm_sequence(&h)?;
        let bound = cauchy_bound(&h);
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            match count_with_chain(&chain, &a, &b) {
                0 => {}
                1 => brackets.push((a, b)),
                _ => {
                    let mid = bisect(&a, &b);
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }

        // Refine each bracket until it excludes every rational root and
        // every other bracket's endpoints (the root stays in (a, b]).
        let chain_ref = &chain;
        let needs_refining =
            |a: &BigRational, b: &BigRational, others: &[(BigRational, BigRational)], me: usize| {
                rationals.iter().any(|r| a <= r && r <= b)
                    || others
                        .iter()
                        .enumerate()
                        .any(|(k, (oa, ob))| k != me && oa <= b && a <= ob)
            };
        let mut i = 0;
        while i < brackets.len() {
            let mut guard = 0;
            while {
                let (a, b) = brackets[i].clone();
                needs_refining(&a, &b, &brackets, i)
            } {
                let (a, b) = brackets[i].clone();
                let mid = bisect(&a, &b);
                brackets[i] = if count_with_chain(chain_ref, &a, &mid) == 1 {
                    (a, mid)
                } else {
                    (mid, b)
                };
                guard += 1;
                assert!(guard < 4096, "root refinement failed to separate");
            }
            i += 1;
        }
    }

    let mut intervals: Vec<IsolatingInterval> = rationals
        .into_iter()
        .map(IsolatingInterval::exact)
        .collect();
    intervals.extend(brackets.into_iter().map(|(lo, hi)| IsolatingInterval {
        lo,
        hi,
        exact_root: None,
    }));
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(intervals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn p(coeffs: &[i64]) -> UniPoly<BigRational> {
        UniPoly::new("x", coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn sturm_counts_sqrt_two() {
        let f = p(&[-2, 0, 1]);
        assert_eq!(count_real_roots_in(&f, &rat(-2), &rat(2)).unwrap(), 2);
        assert_eq!(count_real_roots_in(&f, &rat(0), &rat(2)).unwrap(), 1);
    }

    #[test]
    fn sturm_no_real_roots() {
        let f = p(&[1, 0, 1]);
        assert_eq!(count_real_roots_in(&f, &rat(-10), &rat(10)).unwrap(), 0);
    }

    #[test]
    fn sturm_paper_quartic_has_no_real_roots() {
        // 2x^4 - 14x^2 + 197 over its Cauchy bound.
        let f = p(&[197, 0, -14, 0, 2]);
        let b = cauchy_bound(&f);
        assert_eq!(b, ratio(199, 2));
        assert_eq!(count_real_roots_in(&f, &(-b.clone()), &b).unwrap(), 0);
    }

    #[test]
    fn sturm_rejects_zero_polynomial() {
        assert_eq!(
            sturm_sequence(&UniPoly::new("x", vec![])),
            Err(ExactError::ZeroPolynomial)
        );
    }

    #[test]
    fn isolates_sqrt_two() {
        let f = p(&[-2, 0, 1]);
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.exact_root.is_none()));
        // One bracket around -sqrt(2), one around sqrt(2).
        assert!(roots[0].lo <= ratio(-141, 100) && ratio(-142, 100) <= roots[0].hi);
        assert!(roots[1].lo <= ratio(142, 100) && ratio(141, 100) <= roots[1].hi);
    }

    #[test]
    fn isolates_double_rational_root_exactly() {
        let f = p(&[9, -6, 1]); // (x - 3)^2
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact_root, Some(rat(3)));
        assert_eq!(roots[0].lo, rat(3));
        assert_eq!(roots[0].hi, rat(3));
    }

    #[test]
    fn isolates_nothing_for_paper_quartic() {
        let f = p(&[197, 0, -14, 0, 2]);
        assert_eq!(isolate_real_roots(&f).unwrap(), vec![]);
    }

    #[test]
    fn isolates_mixed_rational_and_irrational() {
        // (x - 1)(x^2 - 2) = x^3 - x^2 - 2x + 2
        let f = p(&[2, -2, -1, 1]);
        let roots = isolate_real_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        let exact: Vec<_> = roots.iter().filter_map(|r| r.exact_root.clone()).collect();
        assert_eq!(exact, vec![rat(1)]);
        // Intervals must be pairwise disjoint.
        for w in roots.windows(2) {
            assert!(w[0].hi < w[1].lo, "{w:?} not disjoint");
        }
    }

    #[test]
    fn isolates_rational_roots_with_fractions() {
        // (2x - 1)(3x + 5) = 6x^2 + 7x - 5
        let f = p(&[-5, 7, 6]);
        let roots = isolate_real_roots(&f).unwrap();
        let exact: Vec<_> = roots.iter().filter_map(|r| r.exact_root.clone()).collect();
        assert_eq!(exact, vec![ratio(-5, 3), ratio(1, 2)]);
    }

    #[test]
    fn isolates_root_at_zero() {
        let f = p(&[0, -1, 1]); // x^2 - x = x(x - 1)
        let roots = isolate_real_roots(&f).unwrap();
        let exact: Vec<_> = roots.iter().filter_map(|r| r.exact_root.clone()).collect();
        assert_eq!(exact, vec![rat(0), rat(1)]);
    }

    #[test]
    fn isolation_count_matches_sturm_total() {
        let f = p(&[2, -2, -1, 1]) * p(&[-5, 7, 6]);
        let sf = squarefree_part(&f);
        let b = cauchy_bound(&sf);
        let total = count_real_roots_in(&sf, &(-b.clone()), &b).unwrap();
        assert_eq!(isolate_real_roots(&f).unwrap().len(), total);
    }

    #[test]
    fn constant_has_no_roots() {
        assert_eq!(isolate_real_roots(&p(&[7])).unwrap(), vec![]);
        assert!(isolate_real_roots(&p(&[])).is_err());
    }
}
