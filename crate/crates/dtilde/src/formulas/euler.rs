use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::gen_binomial;

/// Euler characteristics after a reflection at `q`:
/// `χ(Gr_{σe − m s_q}(σM)) = Σ_{j=0}^{m} χ(Gr_{e + j s_q}(M)) C(n − t, m − j)`,
/// where `table[j] = χ(Gr_{e + j s_q}(M))`, `n = (σ_q e)_q` and `t = α_q − e_q`.
pub fn euler_reflect(table: &[BigInt], n: i64, t: i64, m: usize) -> BigInt {
    (0..=m)
        .map(|j| table.get(j).cloned().unwrap_or_default() * gen_binomial(n - t, (m - j) as u32))
        .sum()
}

/// Euler characteristic of the stratum where `q` is covered by the images:
/// `χ(Gr_{e + m s_q}(M, q⁰)) = Σ_{i=0}^{m} (−1)^{m−i} C(α_q − e_q − i, m − i) χ(Gr_{e + i s_q}(M))`.
pub fn euler_strata(table: &[BigInt], alpha_q: i64, e_q: i64, m: usize) -> BigInt {
    (0..=m)
        .map(|i| {
            let c = gen_binomial(alpha_q - e_q - i as i64, (m - i) as u32);
            let v = table.get(i).cloned().unwrap_or_default() * c;
            if (m - i).is_multiple_of(2) {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// The fibration sum recovering `χ(Gr_{e + m s_q}(M))` from the strata:
/// `Σ_{i=0}^{m} C(α_q − e_q − (m − i), i) strata[m − i]`.
pub fn grassrefl_sum(strata: &[BigInt], alpha_q: i64, e_q: i64, m: usize) -> BigInt {
    (0..=m)
        .map(|i| {
            let c = gen_binomial(alpha_q - e_q - (m - i) as i64, i as u32);
            strata.get(m - i).cloned().unwrap_or_default() * c
        })
        .sum()
}

/// Checks `χ(Gr_e(B)) = χ(Gr_{e−s_q}(N)) + χ(Gr_e(N))`.
pub fn type_two_identity(chi_b: i64, chi_n_shift: i64, chi_n: i64) -> bool {
    chi_b == chi_n_shift + chi_n
}

/// `Σ_{r=0}^{m} (−1)^r C(m,r) C(n−m+r, n−t) = (−1)^m C(n−m, t)` for `n ≥ t ≥ m ≥ 0`.
pub fn binolem_part1(m: i64, t: i64, n: i64) -> bool {
    let lhs: BigInt = (0..=m)
        .map(|r| {
            let v = gen_binomial(m, r as u32) * gen_binomial(n - m + r, (n - t) as u32);
            if r % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum();
    let rhs = gen_binomial(n - m, t as u32);
    lhs == if m % 2 == 0 { rhs } else { -rhs }
}

fn factorial(k: i64) -> BigInt {
    (1..=k).map(BigInt::from).product::<BigInt>().max(BigInt::one())
}

/// `Σ_{r=0}^{m} (−1)^r C(m,r) (n−m+r)!/(t−m+r)! = (n−m)! (t−n+m−1)! / (t! (t−n−1)!)`
/// for `m ≤ n < t`, in exact rationals.
pub fn binolem_part2(m: i64, n: i64, t: i64) -> bool {
    let mut lhs = BigRational::zero();
    for r in 0..=m {
        let v = BigRational::new(
            gen_binomial(m, r as u32) * factorial(n - m + r),
            factorial(t - m + r),
        );
        if r % 2 == 0 {
            lhs += v;
        } else {
            lhs -= v;
        }
    }
    let rhs = BigRational::new(
        factorial(n - m) * factorial(t - n + m - 1),
        factorial(t) * factorial(t - n - 1),
    );
    lhs == rhs
}
