//! Characteristic polynomial of the Pascal matrix.
//!
//! `det(Pascal(L) − xI) = Σ_n C_n(L) (−x)^n` with nonnegative integer
//! coefficients `C_n`. The production route reduces mod word-size primes
//! (Hessenberg form + the standard recurrence), then CRT-lifts using a
//! rigorous Hadamard-style coefficient bound, so the result is exact. A
//! division-free Berkowitz implementation over ℤ is kept as an independent
//! cross-check route for tests.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use super::modular::{invmod, mulmod, primes_desc, submod};
use super::rings::Ring;
use super::{binomial_triangle, pascal_matrix};
use crate::{Error, Result};

/// Coefficients `C_0..C_L` of `det(Pascal − xI) = Σ C_n (−x)^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub l: usize,
    pub coeffs: Vec<BigInt>,
}

impl CharPoly {
    /// Evaluates `det(Pascal + s·I) = Σ_n C_n s^n` by Horner's rule.
    pub fn eval_shifted<T: Ring>(&self, s: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s.clone() + T::from_bigint(c.clone());
        }
        acc
    }

    /// `C_{L/2+p} = C_{L/2-p}` for all p (even L).
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|k| self.coeffs[k] == self.coeffs[n - 1 - k])
    }
}

/// Exact characteristic polynomial of the `l x l` Pascal matrix, cached
/// per process (the same coefficients feed the Q(L,m) formulas, the shifted
/// determinants and the asymptotic series).
pub fn pascal_charpoly(l: usize) -> Result<Arc<CharPoly>> {
    if l == 0 {
        return Err(Error::InvalidArgument("charpoly needs l >= 1".into()));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&l) {
        return Ok(hit.clone());
    }
    let computed = Arc::new(pascal_charpoly_crt(l)?);
    cache
        .lock()
        .unwrap()
        .entry(l)
        .or_insert_with(|| computed.clone());
    Ok(computed)
}

fn pascal_charpoly_crt(l: usize) -> Result<CharPoly> {
    let bound = coefficient_bound(l);
    let target = BigInt::from(2) * &bound + 1;

    let mut modulus = BigInt::from(1);
    let mut lifted: Vec<BigInt> = vec![BigInt::from(0); l + 1];
    for p in primes_desc() {
        let residues = charpoly_mod_p(l, p);
        if modulus.is_one() {
            for (x, r) in lifted.iter_mut().zip(&residues) {
                *x = BigInt::from(*r);
            }
        } else {
            // incremental CRT: x += modulus * ((r - x) / modulus mod p)
            let m_mod_p = (&modulus % p).to_u64_digits().1.first().copied().unwrap_or(0);
            let m_inv = invmod(m_mod_p, p);
            for (x, &r) in lifted.iter_mut().zip(&residues) {
                let x_mod_p = {
                    let rem = ((&*x) % p + p) % p;
                    rem.to_u64_digits().1.first().copied().unwrap_or(0)
                };
                let t = mulmod(submod(r, x_mod_p, p), m_inv, p);
                *x += &modulus * BigInt::from(t);
            }
        }
        modulus *= p;
        if modulus > target {
            break;
        }
    }
    // symmetric lift, then strip the global sign:
    // det(xI-P) coeff of x^n is (-1)^(l-n) C_n
    let half = &modulus / 2;
    let mut coeffs = Vec::with_capacity(l + 1);
    for (n, mut x) in lifted.into_iter().enumerate() {
        if x > half {
            x -= &modulus;
        }
        if (l - n) % 2 == 1 {
            x = -x;
        }
        coeffs.push(x);
    }
    if !coeffs[l].is_one() || !coeffs[0].is_one() {
        return Err(Error::Internal(format!(
            "pascal charpoly reconstruction failed at l={l}: C_0={}, C_L={}",
            coeffs[0], coeffs[l]
        )));
    }
    debug_assert!(coeffs.iter().all(|c| c.is_positive()));
    Ok(CharPoly { l, coeffs })
}

/// Hadamard-style bound on |charpoly coefficients| of the Pascal matrix:
/// the coefficient of x^(L-k) is a sum of binom(L,k) k x k principal minors,
/// each at most the product of the k largest column norms.
fn coefficient_bound(l: usize) -> BigInt {
    let m = pascal_matrix(l);
    let mut colnorm_sq: Vec<BigInt> = (0..l)
        .map(|j| (0..l).map(|i| &m[i][j] * &m[i][j]).sum())
        .collect();
    colnorm_sq.sort();
    colnorm_sq.reverse();
    let binoms = binomial_triangle(l);
    let mut best = BigInt::from(1);
    let mut prefix = BigInt::from(1);
    for k in 1..=l {
        prefix *= &colnorm_sq[k - 1];
        // bound_k = binom(l,k) * sqrt(prefix), rounded up
        let b2 = &binoms[l][k] * &binoms[l][k] * &prefix;
        let bk = b2.sqrt() + 1;
        if bk > best {
            best = bk;
        }
    }
    best
}

/// Coefficients of det(xI − Pascal(l)) mod p, ascending in x.
fn charpoly_mod_p(l: usize, p: u64) -> Vec<u64> {
    // Pascal entries mod p by triangle recurrence
    let mut h = vec![vec![0u64; l]; l];
    {
        let mut row = vec![1u64; 1];
        let mut tri: Vec<Vec<u64>> = Vec::with_capacity(2 * l);
        tri.push(row.clone());
        for n in 1..(2 * l).max(1) {
            let prev = &tri[n - 1];
            row = vec![1u64; n + 1];
            for k in 1..n {
                row[k] = (prev[k - 1] + prev[k]) % p;
            }
            tri.push(row.clone());
        }
        for (i, hrow) in h.iter_mut().enumerate() {
            for (j, cell) in hrow.iter_mut().enumerate() {
                *cell = tri[i + j][i];
            }
        }
    }
    hessenberg_mod_p(&mut h, p);
    hessenberg_charpoly_mod_p(&h, p)
}

/// In-place similarity reduction to upper Hessenberg form mod p.
fn hessenberg_mod_p(h: &mut [Vec<u64>], p: u64) {
    let n = h.len();
    for j in 0..n.saturating_sub(2) {
        if h[j + 1][j] == 0 {
            let Some(r) = (j + 2..n).find(|&r| h[r][j] != 0) else {
                continue;
            };
            h.swap(j + 1, r);
            for row in h.iter_mut() {
                row.swap(j + 1, r);
            }
        }
        let inv = invmod(h[j + 1][j], p);
        for r in j + 2..n {
            if h[r][j] == 0 {
                continue;
            }
            let f = mulmod(h[r][j], inv, p);
            for c in j..n {
                let sub = mulmod(f, h[j + 1][c], p);
                h[r][c] = submod(h[r][c], sub, p);
            }
            // inverse similarity op on columns
            for row in h.iter_mut() {
                let add = mulmod(f, row[r], p);
                row[j + 1] = (row[j + 1] + add) % p;
            }
        }
    }
}

/// Leading-minor recurrence for the charpoly of an upper Hessenberg matrix.
fn hessenberg_charpoly_mod_p(h: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = h.len();
    // polys[m] = charpoly of leading m x m block, ascending coefficients
    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1u64]);
    for m in 1..=n {
        let mut q = vec![0u64; m + 1];
        // (x - h[m-1][m-1]) * polys[m-1]
        let prev = &polys[m - 1];
        for (i, &c) in prev.iter().enumerate() {
            q[i + 1] = (q[i + 1] + c) % p;
            q[i] = submod(q[i], mulmod(h[m - 1][m - 1], c, p), p);
        }
        // subdiagonal-product corrections
        let mut sub_prod = 1u64;
        for k in 1..m {
            sub_prod = mulmod(sub_prod, h[m - k][m - k - 1], p);
            if sub_prod == 0 {
                break;
            }
            let factor = mulmod(h[m - k - 1][m - 1], sub_prod, p);
            if factor == 0 {
                continue;
            }
            for (i, &c) in polys[m - k - 1].iter().enumerate() {
                q[i] = submod(q[i], mulmod(factor, c, p), p);
            }
        }
        polys.push(q);
    }
    polys.pop().unwrap()
}

// ---------------------------------------------------------------------------
// Berkowitz (division-free, independent route for cross-checks)
// ---------------------------------------------------------------------------

/// Division-free Berkowitz characteristic polynomial over ℤ; returns the
/// coefficients of det(xI − M), ascending in x.
pub fn berkowitz_charpoly(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::from(1)];
    }
    // coefficient vector in descending power order, starts as charpoly of
    // the empty matrix
    let mut c: Vec<BigInt> = vec![BigInt::from(1)];
    for k in 1..=n {
        // v = [1, -m[k-1][k-1], -(R C), -(R A C), ..., -(R A^{k-2} C)]
        let mut v: Vec<BigInt> = Vec::with_capacity(k + 1);
        v.push(BigInt::from(1));
        v.push(-m[k - 1][k - 1].clone());
        let mut u: Vec<BigInt> = (0..k - 1).map(|i| m[i][k - 1].clone()).collect();
        for _ in 0..k.saturating_sub(1) {
            let dot: BigInt = (0..k - 1).map(|j| &m[k - 1][j] * &u[j]).sum();
            v.push(-dot);
            if v.len() == k + 1 {
                break;
            }
            let next: Vec<BigInt> = (0..k - 1)
                .map(|i| (0..k - 1).map(|j| &m[i][j] * &u[j]).sum())
                .collect();
            u = next;
        }
        while v.len() < k + 1 {
            v.push(BigInt::from(0));
        }
        // c_new = lower-triangular Toeplitz(v) * c
        let mut next = vec![BigInt::from(0); k + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j < v.len() {
                    *slot += &v[i - j] * cj;
                }
            }
        }
        c = next;
    }
    c.reverse();
    c
}

/// `pascal_charpoly` recomputed through Berkowitz; test/cross-check route.
pub fn pascal_charpoly_berkowitz(l: usize) -> CharPoly {
    let coeffs_asc = berkowitz_charpoly(&pascal_matrix(l));
    let coeffs = coeffs_asc
        .into_iter()
        .enumerate()
        .map(|(n, c)| if (l - n) % 2 == 1 { -c } else { c })
        .collect();
    CharPoly { l, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::det::bareiss_det;
    use crate::algebra::rings::{EisenInt, GaussInt};

    #[test]
    fn small_charpolys_by_hand() {
        // Pascal(2) = [[1,1],[1,2]]: det(P - xI) = x^2 - 3x + 1 -> C = (1,3,1)
        let c2 = pascal_charpoly(2).unwrap();
        assert_eq!(c2.coeffs, vec![1.into(), 3.into(), 1.into()]);
        let c4 = pascal_charpoly(4).unwrap();
        assert_eq!(
            c4.coeffs,
            vec![1.into(), 29.into(), 72.into(), 29.into(), 1.into()]
        );
        // frozen from an independent symbolic computation
        let c6 = pascal_charpoly(6).unwrap();
        assert_eq!(
            c6.coeffs,
            [1, 351, 6084, 13869, 6084, 351, 1]
                .iter()
                .map(|&x| BigInt::from(x))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn crt_route_matches_berkowitz() {
        for l in 1..=16 {
            let fast = pascal_charpoly(l).unwrap();
            let slow = pascal_charpoly_berkowitz(l);
            assert_eq!(fast.coeffs, slow.coeffs, "l={l}");
        }
    }

    #[test]
    fn charpoly_matches_fraction_free_determinants_at_integer_points() {
        // evaluate det(Pascal - xI) at 7 integer points via Bareiss
        for l in [2usize, 4, 6, 8] {
            let cp = pascal_charpoly(l).unwrap();
            for x in -3i64..=3 {
                let mut m = pascal_matrix(l);
                for (d, row) in m.iter_mut().enumerate() {
                    row[d] -= BigInt::from(x);
                }
                let det = bareiss_det(m);
                let expect = cp.eval_shifted(&BigInt::from(-x));
                assert_eq!(det, expect, "l={l}, x={x}");
            }
        }
    }

    #[test]
    fn direct_expansion_check_small() {
        // cofactor expansion oracle, l <= 6
        fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
            let n = m.len();
            if n == 0 {
                return BigInt::from(1);
            }
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = BigInt::from(0);
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m[i][c].clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * cofactor_det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        for l in [2usize, 4, 6] {
            let cp = pascal_charpoly(l).unwrap();
            for x in [-2i64, 1, 5] {
                let mut m = pascal_matrix(l);
                for (d, row) in m.iter_mut().enumerate() {
                    row[d] -= BigInt::from(x);
                }
                assert_eq!(cofactor_det(&m), cp.eval_shifted(&BigInt::from(-x)));
            }
        }
    }

    #[test]
    fn palindromic_symmetry_even_l() {
        for l in (2..=20).step_by(2) {
            let cp = pascal_charpoly(l).unwrap();
            assert!(cp.is_palindromic(), "l={l}");
        }
    }

    #[test]
    fn shifted_eval_in_extension_rings() {
        let cp = pascal_charpoly(2).unwrap();
        // det(P + iI) = (1+i)(2+i) - 1 = 3i
        assert_eq!(cp.eval_shifted(&GaussInt::i()), GaussInt::new(0, 3));
        // det(P + wI) = 4w
        assert_eq!(cp.eval_shifted(&EisenInt::omega()), EisenInt::new(0, 4));
    }

    #[test]
    fn monic_and_det_one_up_to_l60() {
        for l in (2..=60).step_by(14) {
            let cp = pascal_charpoly(l).unwrap();
            assert!(cp.coeffs[0].is_one());
            assert!(cp.coeffs[l].is_one());
            assert!(cp.coeffs.iter().all(|c| c.is_positive()));
        }
    }
}
