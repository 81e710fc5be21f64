use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::verify::CheckReport;

/// `H_n = Σ_{k=1..n} 1/k`, exactly. `H_0 = 0`.
pub fn harmonic(n: usize) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, k| acc + recip(k))
}

/// `H_{n,2} = Σ_{k=1..n} 1/k²`, exactly.
pub fn harmonic2(n: usize) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, k| acc + recip(k * k))
}

fn recip(k: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(k))
}

/// Exact power-series coefficients; index `n` holds the coefficient of `zⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCoefficientList {
    pub coeffs: Vec<BigRational>,
}

impl RationalCoefficientList {
    fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `log(1 − z) = −Σ_{n≥1} zⁿ/n`.
    fn log_one_minus(order: usize) -> Self {
        let mut s = Self::zeros(order);
        for n in 1..=order {
            s.coeffs[n] = -recip(n);
        }
        s
    }

    /// `Li₂(z) = Σ_{n≥1} zⁿ/n²`.
    fn dilog(order: usize) -> Self {
        let mut s = Self::zeros(order);
        for n in 1..=order {
            s.coeffs[n] = recip(n * n);
        }
        s
    }

    fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn scale(&self, factor: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zeros(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// Division by `1 − z`: running prefix sums.
    fn div_one_minus(&self) -> Self {
        let mut acc = BigRational::zero();
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    acc += c;
                    acc.clone()
                })
                .collect(),
        }
    }
}

/// Generating functions of the harmonic-number sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenfuncKind {
    /// `log(1−z)/(1−z) = −Σ H_n zⁿ`
    Hn,
    /// `(Li₂(z) + log²(1−z))/(1−z) = Σ H_n² zⁿ`
    HnSq,
    /// `Li₂(z)/(1−z) = Σ H_{n,2} zⁿ`
    Hn2,
    /// `Li₂(z) + ½ log²(1−z) = Σ (H_n/n) zⁿ`
    HnOverN,
}

impl GenfuncKind {
    pub const ALL: [GenfuncKind; 4] = [Self::Hn, Self::HnSq, Self::Hn2, Self::HnOverN];

    pub fn name(self) -> &'static str {
        match self {
            Self::Hn => "Hn",
            Self::HnSq => "Hn_sq",
            Self::Hn2 => "Hn2",
            Self::HnOverN => "Hn_over_n",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for GenfuncKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coefficients `0..=order` of the closed-form side, expanded exactly.
pub fn genfunc_coeffs_closed(kind: GenfuncKind, order: usize) -> RationalCoefficientList {
    let log1m = RationalCoefficientList::log_one_minus(order);
    let li2 = RationalCoefficientList::dilog(order);
    match kind {
        GenfuncKind::Hn => log1m.div_one_minus(),
        GenfuncKind::HnSq => li2.add(&log1m.mul(&log1m)).div_one_minus(),
        GenfuncKind::Hn2 => li2.div_one_minus(),
        GenfuncKind::HnOverN => {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            li2.add(&log1m.mul(&log1m).scale(&half))
        }
    }
}

/// The sequence side: `−H_n`, `H_n²`, `H_{n,2}` or `H_n/n` for `n = 0..=order`.
pub fn genfunc_direct(kind: GenfuncKind, order: usize) -> RationalCoefficientList {
    let mut h = BigRational::zero();
    let mut h2 = BigRational::zero();
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n > 0 {
            h += recip(n);
            h2 += recip(n * n);
        }
        coeffs.push(match kind {
            GenfuncKind::Hn => -h.clone(),
            GenfuncKind::HnSq => &h * &h,
            GenfuncKind::Hn2 => h2.clone(),
            GenfuncKind::HnOverN if n == 0 => BigRational::zero(),
            GenfuncKind::HnOverN => &h / BigRational::from_integer(BigInt::from(n)),
        });
    }
    RationalCoefficientList { coeffs }
}

/// Coefficient-by-coefficient exact comparison of the two sides to `order`.
///
/// `lhs` carries the largest absolute coefficient discrepancy and `rhs` is 0;
/// the tolerance is 0, and the pass flag comes from the exact comparison.
pub fn genfunc_identity_check(kind: GenfuncKind, order: usize) -> CheckReport {
    let closed = genfunc_coeffs_closed(kind, order);
    let direct = genfunc_direct(kind, order);
    let mut max_diff = BigRational::zero();
    let mut mismatches = 0usize;
    for (a, b) in closed.coeffs.iter().zip(&direct.coeffs) {
        let d = (a - b).abs();
        if !d.is_zero() {
            mismatches += 1;
        }
        if d > max_diff {
            max_diff = d;
        }
    }
    let exact_pass = mismatches == 0;
    let mut discrepancy = max_diff.to_f64().unwrap_or(f64::INFINITY);
    if !exact_pass && discrepancy == 0.0 {
        discrepancy = f64::MIN_POSITIVE;
    }
    let mut params = BTreeMap::new();
    params.insert("order".to_string(), order as f64);
    let notes = format!(
        "kind={kind}; {} of {} coefficients differ",
        mismatches,
        order + 1
    );
    CheckReport::new(
        format!("genfunc_{}", kind.name().to_ascii_lowercase()),
        params,
        discrepancy,
        0.0,
        0.0,
        notes,
    )
}
