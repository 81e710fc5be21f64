use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::TruncationPolicy;
use crate::error::{convergence, domain, Result};

/// Partition numbers `P(0), …, P(n_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    values: Vec<BigUint>,
}

impl PartitionTable {
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// `P(0..=n_max)` by Euler's pentagonal-number recurrence
/// `P(n) = Σ_{k≥1} (−1)^{k+1} [P(n − k(3k−1)/2) + P(n − k(3k+1)/2)]`.
pub fn partition_numbers(n_max: usize) -> PartitionTable {
    let mut values: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    values.push(BigUint::from(1u32));
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut pair = BigInt::from(values[n - g1].clone());
            if g2 <= n {
                pair += BigInt::from(values[n - g2].clone());
            }
            if k % 2 == 1 {
                acc += pair;
            } else {
                acc -= pair;
            }
        }
        values.push(acc.to_biguint().expect("partition numbers are non-negative"));
    }
    PartitionTable { values }
}

/// `Σ_{n≥0} P(n) pⁿ`, the partition generating function `1/(p;p)_∞`.
///
/// The cut-off `N ≤ n_max` is the first index for which the tail is certified
/// below `term_eps` using `P(n) < exp(π√(2n/3))`: the majorant terms
/// `b_n = exp(π√(2n/3)) pⁿ` have ratios decreasing in `n`, so the tail is at
/// most `b_{N+1} / (1 − ρ)` once `ρ = p·exp(π√(2/3)/(2√(N+1))) < 1`.
pub fn partition_gf(p: f64, n_max: usize, policy: &TruncationPolicy) -> Result<f64> {
    policy.validate()?;
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("partition generating function needs 0 < p < 1, got {p}")));
    }
    let c = std::f64::consts::PI * (2.0f64 / 3.0).sqrt();
    let ln_p = p.ln();
    let cutoff = (0..=n_max).find(|&n| {
        let m = (n + 1) as f64;
        let rho = p * (c / (2.0 * m.sqrt())).exp();
        if rho >= 1.0 {
            return false;
        }
        let log_b = c * m.sqrt() + m * ln_p;
        log_b - (1.0 - rho).ln() < policy.term_eps.ln()
    });
    let Some(cutoff) = cutoff else {
        return Err(convergence(format!(
            "partition series at p={p} not certified within n_max={n_max}"
        )));
    };
    let table = partition_numbers(cutoff);
    let mut sum = 0.0;
    let mut pn = 1.0;
    for value in table.values() {
        sum += value.to_f64().unwrap_or(f64::INFINITY) * pn;
        pn *= p;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series_core::q_pochhammer_inf;

    // Independent oracle: P(n, k) = number of partitions of n with parts <= k.
    fn partitions_dp(n_max: usize) -> Vec<u64> {
        let mut ways = vec![0u64; n_max + 1];
        ways[0] = 1;
        for part in 1..=n_max {
            for n in part..=n_max {
                ways[n] += ways[n - part];
            }
        }
        ways
    }

    #[test]
    fn small_values() {
        let t = partition_numbers(10);
        assert_eq!(t.get(0).unwrap(), &BigUint::from(1u32));
        assert_eq!(t.get(4).unwrap(), &BigUint::from(5u32));
        assert_eq!(t.get(10).unwrap(), &BigUint::from(42u32));
        assert_eq!(t.n_max(), 10);
    }

    #[test]
    fn recurrence_matches_dp_oracle() {
        let t = partition_numbers(300);
        let dp = partitions_dp(300);
        for n in 0..=300 {
            assert_eq!(t.get(n).unwrap().to_u64().unwrap(), dp[n], "n={n}");
        }
        let nondecreasing = t.values().windows(2).skip(1).all(|w| w[0] <= w[1]);
        assert!(nondecreasing);
    }

    #[test]
    fn big_values() {
        // P(100) = 190569292, P(200) = 3972999029388.
        let t = partition_numbers(200);
        assert_eq!(t.get(100).unwrap(), &BigUint::from(190_569_292u64));
        assert_eq!(t.get(200).unwrap(), &BigUint::from(3_972_999_029_388u64));
    }

    #[test]
    fn reciprocal_of_euler_product() {
        let policy = TruncationPolicy::default();
        for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let gf = partition_gf(p, 20_000, &policy).unwrap();
            let euler = q_pochhammer_inf(p, p, &policy).unwrap();
            assert!((gf * euler - 1.0).abs() <= 1e-12, "p={p}: {}", gf * euler - 1.0);
        }
    }

    #[test]
    fn direct_values() {
        let policy = TruncationPolicy::default();
        let v = partition_gf(0.1, 20_000, &policy).unwrap();
        assert!((v - 1.1235827548486525).abs() < 1e-15);
        let tiny = partition_gf(1e-300, 10, &policy).unwrap();
        assert_eq!(tiny, 1.0);
    }

    #[test]
    fn errors() {
        let policy = TruncationPolicy::default();
        assert!(partition_gf(1.0, 100, &policy).is_err());
        assert!(partition_gf(0.0, 100, &policy).is_err());
        assert!(matches!(
            partition_gf(0.9, 50, &policy),
            Err(crate::Error::Convergence(_))
        ));
    }
}
