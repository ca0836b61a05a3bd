//! Multi-modular evaluation of Hankel minors of power sums.
//!
//! The subdiscriminant values of a cleared (Gaussian-integer) reduced density
//! are determinants of Hankel matrices whose entries `s_m = Tr(rho^m)` grow
//! to hundreds of kilobits at `d = 8..12`. Rather than eliminating over those
//! integers directly, this module works modulo a batch of 62-bit primes:
//! per prime it reduces the matrix, forms the power-sum residues, and runs
//! Gaussian elimination in the prime field; the exact determinants are then
//! recovered by mixed-radix CRT against a Binet-Cauchy magnitude bound
//! (`det H_k` is a sum of squared Vandermonde products of eigenvalues, all
//! bounded by the Frobenius norm).
//!
//! Residue arithmetic keeps products unreduced in `u128` accumulators and
//! performs one division per output entry, so the whole sequence costs little
//! more than a pass of modular matrix products per prime.

#![allow(clippy::needless_range_loop)]
use std::sync::Mutex;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use super::gaussint::GaussianInt;
use super::matrix::Matrix;

/// Largest number of unreduced 124-bit products that fit in a u128
/// accumulator.
const LAZY_CHUNK: usize = 15;

/// Deterministic Miller-Rabin for `u64` (the listed witness set is complete
/// below 3.3e24).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [
        2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    ] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: p is prime and a != 0 mod p.
    pow_mod(a, p - 2, p)
}

/// Growable pool of distinct 62-bit primes, descending from 2^62.
static PRIME_POOL: Mutex<Vec<u64>> = Mutex::new(Vec::new());

fn primes(count: usize) -> Vec<u64> {
    let mut pool = PRIME_POOL.lock().unwrap();
    let mut candidate = match pool.last() {
        Some(&last) => last - 2,
        None => (1u64 << 62) - 1,
    };
    while pool.len() < count {
        if is_prime_u64(candidate) {
            pool.push(candidate);
        }
        candidate -= 2;
    }
    pool[..count].to_vec()
}

fn reduce_bigint(x: &BigInt, p: u64) -> u64 {
    let m: BigInt = x % p;
    let m = if m.is_negative() { m + p } else { m };
    let (_, digits) = m.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Square complex residue matrix, components flat row-major.
struct ResidueMatrix {
    n: usize,
    re: Vec<u64>,
    im: Vec<u64>,
}

/// Complex matrix product mod p with lazily reduced u128 accumulators.
fn matmul_mod(a: &ResidueMatrix, b: &ResidueMatrix, p: u64) -> ResidueMatrix {
    let n = a.n;
    let mut out = ResidueMatrix {
        n,
        re: vec![0; n * n],
        im: vec![0; n * n],
    };
    for i in 0..n {
        for j in 0..n {
            // (x + yi)(u + vi) accumulated as four nonnegative streams.
            let mut xu: u128 = 0;
            let mut yv: u128 = 0;
            let mut xv: u128 = 0;
            let mut yu: u128 = 0;
            for chunk_start in (0..n).step_by(LAZY_CHUNK) {
                let end = (chunk_start + LAZY_CHUNK).min(n);
                for k in chunk_start..end {
                    let x = a.re[i * n + k] as u128;
                    let y = a.im[i * n + k] as u128;
                    let u = b.re[k * n + j] as u128;
                    let v = b.im[k * n + j] as u128;
                    xu += x * u;
                    yv += y * v;
                    xv += x * v;
                    yu += y * u;
                }
                if end < n {
                    xu %= p as u128;
                    yv %= p as u128;
                    xv %= p as u128;
                    yu %= p as u128;
                }
            }
            let xu = (xu % p as u128) as u64;
            let yv = (yv % p as u128) as u64;
            let xv = (xv % p as u128) as u64;
            let yu = (yu % p as u128) as u64;
            out.re[i * n + j] = (xu + p - yv) % p;
            out.im[i * n + j] = (xv + yu) % p;
        }
    }
    out
}

/// `Tr(a * b)` mod p; returns the real component and asserts the imaginary
/// one vanishes (traces of powers of a Hermitian matrix are real).
fn trace_prod_mod(a: &ResidueMatrix, b: &ResidueMatrix, p: u64) -> u64 {
    let n = a.n;
    let mut re: u128 = 0;
    let mut im_pos: u128 = 0;
    let mut im_neg: u128 = 0;
    let mut re_neg: u128 = 0;
    let mut seen = 0usize;
    let mut racc = 0u64;
    let mut racc_neg = 0u64;
    let mut iacc = 0u64;
    let mut iacc_neg = 0u64;
    for i in 0..n {
        for j in 0..n {
            let x = a.re[i * n + j] as u128;
            let y = a.im[i * n + j] as u128;
            let u = b.re[j * n + i] as u128;
            let v = b.im[j * n + i] as u128;
            re += x * u;
            re_neg += y * v;
            im_pos += x * v;
            im_neg += y * u;
            seen += 1;
            if seen == LAZY_CHUNK {
                racc = ((racc as u128 + re) % p as u128) as u64;
                racc_neg = ((racc_neg as u128 + re_neg) % p as u128) as u64;
                iacc = ((iacc as u128 + im_pos) % p as u128) as u64;
                iacc_neg = ((iacc_neg as u128 + im_neg) % p as u128) as u64;
                re = 0;
                re_neg = 0;
                im_pos = 0;
                im_neg = 0;
                seen = 0;
            }
        }
    }
    racc = ((racc as u128 + re) % p as u128) as u64;
    racc_neg = ((racc_neg as u128 + re_neg) % p as u128) as u64;
    iacc = ((iacc as u128 + im_pos) % p as u128) as u64;
    iacc_neg = ((iacc_neg as u128 + im_neg) % p as u128) as u64;
    debug_assert_eq!((iacc + p - iacc_neg) % p, 0, "trace must be real");
    (racc + p - racc_neg) % p
}

/// Power-sum residues `s_0 .. s_m mod p` of a Hermitian Gaussian-integer
/// matrix. Powers are stored only up to `ceil(m/2)`; higher sums come from
/// traces of products of two stored powers.
fn power_sum_residues(entries: &Matrix<GaussianInt>, m: usize, p: u64) -> Vec<u64> {
    let n = entries.rows();
    let base = {
        let mut re = Vec::with_capacity(n * n);
        let mut im = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                re.push(reduce_bigint(&entries[(i, j)].re, p));
                im.push(reduce_bigint(&entries[(i, j)].im, p));
            }
        }
        ResidueMatrix { n, re, im }
    };
    let identity = {
        let mut re = vec![0u64; n * n];
        for i in 0..n {
            re[i * n + i] = 1;
        }
        ResidueMatrix {
            n,
            re,
            im: vec![0; n * n],
        }
    };

    let half = m.div_ceil(2).max(1);
    let mut powers: Vec<ResidueMatrix> = Vec::with_capacity(half);
    powers.push(ResidueMatrix {
        n,
        re: base.re.clone(),
        im: base.im.clone(),
    });
    for _ in 2..=half {
        powers.push(matmul_mod(powers.last().unwrap(), &base, p));
    }

    let mut sums = Vec::with_capacity(m + 1);
    sums.push((n as u64) % p);
    for k in 1..=m {
        let value = if k <= half {
            trace_prod_mod(&powers[k - 1], &identity, p)
        } else {
            trace_prod_mod(&powers[half - 1], &powers[k - half - 1], p)
        };
        sums.push(value);
    }
    sums
}

/// Determinant of the k x k Hankel matrix `H[i][j] = s[i+j]` over `Z/p`, by
/// Gaussian elimination with partial pivoting.
fn hankel_det_mod_p(s: &[u64], k: usize, p: u64) -> u64 {
    let mut a: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| s[i + j]).collect()).collect();
    let mut det = 1u64;
    for col in 0..k {
        let pivot_row = match (col..k).find(|&r| a[r][col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = if det == 0 { 0 } else { p - det };
        }
        let pivot = a[col][col];
        det = mul_mod(det, pivot, p);
        let inv = inv_mod(pivot, p);
        for r in col + 1..k {
            let factor = mul_mod(a[r][col], inv, p);
            if factor == 0 {
                continue;
            }
            for c in col..k {
                let sub = mul_mod(factor, a[col][c], p);
                a[r][c] = (a[r][c] + p - sub) % p;
            }
        }
    }
    det
}

/// Bit bound on `|det H_k|` from Binet-Cauchy: the determinant is a sum of
/// `C(d, k)` squared Vandermonde products of eigenvalues, each eigenvalue
/// bounded in magnitude by the Frobenius norm `F`, so
/// `|det H_k| <= C(d,k) * (2F)^(k(k-1))`.
fn minor_bound_bits(f_bits: u64, d: usize, k: usize) -> u64 {
    let pairs = (k * (k - 1)) as u64;
    pairs * (f_bits + 1) + d as u64 + 64
}

fn frobenius_bits(entries: &Matrix<GaussianInt>) -> u64 {
    let n = entries.rows();
    let mut frob_sq = BigInt::zero();
    for i in 0..n {
        for j in 0..n {
            frob_sq += entries[(i, j)].norm_sqr();
        }
    }
    frob_sq.bits().div_ceil(2) + 1
}

/// Mixed-radix CRT over u64 digits: reconstructs each value from its residue
/// prefix, then assembles and balance-lifts against the matching modulus
/// prefix.
fn crt_reconstruct(residues: &[Vec<u64>], counts: &[usize], ps: &[u64]) -> Vec<BigInt> {
    let max_count = *counts.iter().max().unwrap_or(&0);
    // inv_prefix[i] = (p_0 * ... * p_{i-1})^-1 mod p_i
    let mut inv_prefix = vec![0u64; max_count];
    for i in 1..max_count {
        let p = ps[i];
        let mut prod = 1u64;
        for &q in &ps[..i] {
            prod = mul_mod(prod, q % p, p);
        }
        inv_prefix[i] = inv_mod(prod, p);
    }
    // Modulus prefixes at each needed count, built incrementally.
    let mut modulus_at = vec![BigInt::from(1u8); max_count + 1];
    for i in 0..max_count {
        modulus_at[i + 1] = &modulus_at[i] * BigInt::from(ps[i]);
    }

    residues
        .iter()
        .zip(counts)
        .map(|(r, &n)| {
            let mut digits = vec![0u64; n];
            for i in 0..n {
                let p = ps[i];
                // Evaluate the mixed-radix prefix at p_i by Horner.
                let mut e = 0u64;
                for t in (0..i).rev() {
                    e = (mul_mod(e, ps[t] % p, p) + digits[t] % p) % p;
                }
                digits[i] = mul_mod(
                    (r[i] + p - e) % p,
                    if i == 0 { 1 } else { inv_prefix[i] },
                    p,
                );
            }
            // x = v_0 + p_0 (v_1 + p_1 (v_2 + ...))
            let mut x = BigInt::zero();
            for i in (0..n).rev() {
                x = x * BigInt::from(ps[i]) + BigInt::from(digits[i]);
            }
            let modulus = &modulus_at[n];
            if x > (modulus >> 1) {
                x -= modulus;
            }
            x
        })
        .collect()
}

/// Residues `det H_k mod p` for `k = 1..=d` over per-minor prime batches.
fn minor_residues(
    entries: &Matrix<GaussianInt>,
    d: usize,
) -> (Vec<Vec<u64>>, Vec<usize>, Vec<u64>) {
    let m = (2 * d).saturating_sub(2).max(2);
    let f_bits = frobenius_bits(entries);
    let counts: Vec<usize> = (1..=d)
        .map(|k| (minor_bound_bits(f_bits, d, k) / 61 + 2) as usize)
        .collect();
    let total = *counts.iter().max().unwrap();
    let ps = primes(total);

    // residues[k-1][i] = det H_k mod ps[i], up to that minor's own count.
    let mut residues: Vec<Vec<u64>> = counts.iter().map(|&c| Vec::with_capacity(c)).collect();
    for (i, &p) in ps.iter().enumerate() {
        let sums = power_sum_residues(entries, m, p);
        for k in 1..=d {
            if i < counts[k - 1] {
                residues[k - 1].push(hankel_det_mod_p(&sums, k, p));
            }
        }
    }
    (residues, counts, ps)
}

/// Exact values `det H_1 .. det H_d` for the Hankel matrices of power sums of
/// a Hermitian Gaussian-integer matrix, by multi-modular elimination and CRT
/// reconstruction.
pub fn integer_hankel_minors(entries: &Matrix<GaussianInt>, d: usize) -> Vec<BigInt> {
    assert!(entries.is_square() && entries.rows() == d);
    let (residues, counts, ps) = minor_residues(entries, d);
    crt_reconstruct(&residues, &counts, &ps)
}

/// The verdict-path view of the minors: `det H_2` reconstructed exactly, plus
/// the largest `k` with `det H_k != 0`. A minor is zero exactly when every
/// residue in its batch vanishes (the batch modulus exceeds twice the
/// magnitude bound), so no other reconstruction is needed.
pub fn integer_hankel_verdict(entries: &Matrix<GaussianInt>, d: usize) -> (BigInt, usize) {
    assert!(d >= 2, "use the trivial path below dimension 2");
    let (residues, counts, ps) = minor_residues(entries, d);
    let det_h2 = crt_reconstruct(&residues[1..2], &counts[1..2], &ps)
        .pop()
        .unwrap();
    let degeneracy = (1..=d)
        .rev()
        .find(|&k| residues[k - 1].iter().any(|&r| r != 0))
        .expect("det H_1 = d is never zero");
    (det_h2, degeneracy)
}

/// `f64` view of a big-integer ratio `numer / denom`, robust to operands far
/// beyond the `f64` exponent range.
pub fn big_ratio_to_f64(numer: &BigInt, denom: &BigInt) -> f64 {
    if numer.is_zero() {
        return 0.0;
    }
    assert!(!denom.is_zero());
    let sign = if (numer.sign() == Sign::Minus) ^ (denom.sign() == Sign::Minus) {
        -1.0
    } else {
        1.0
    };
    let (n, d) = (numer.abs(), denom.abs());
    // Shift so the integer quotient keeps ~80 significant bits.
    let shift = (d.bits() as i64 + 80) - n.bits() as i64;
    let q = if shift >= 0 {
        (n << shift as u64) / &d
    } else {
        (n >> (-shift) as u64) / &d
    };
    let mut value = 0.0f64;
    for (i, digit) in q.to_u64_digits().1.iter().enumerate() {
        value += *digit as f64 * 2f64.powi(64 * i as i32);
    }
    sign * value * 2f64.powi(-shift as i32)
}
