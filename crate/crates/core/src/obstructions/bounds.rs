//! The size bound for unsplit graphs of bounded treedepth:
//! `k_d = 1`, `k_i = 2^(C(k_{i+1}, 2) + d·k_{i+1}) · k_{i+1} + 1`, `N = k_0`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("d must be at least 1")]
    ZeroDepth,
    #[error("unsplit_size_bound({d}) exceeds the digit budget of {budget}")]
    DigitBudget { d: usize, budget: usize },
}

/// Exponents beyond this many bits are never materialised.
const MAX_EXPONENT_BITS: u64 = 1 << 22;

fn exponent(k: &BigUint, d: usize) -> BigUint {
    let pairs = if k.is_zero() {
        BigUint::zero()
    } else {
        k * (k - 1u32) / 2u32
    };
    pairs + k * d
}

/// `log10(2)` scaled by `10^precision`, from `ln 2 / ln 10` with
/// `ln 10 = 3 ln 2 + 2 atanh(1/9)`.
fn log10_2_scaled(precision: u32) -> BigUint {
    let guard = precision + 20;
    let scale = BigUint::from(10u32).pow(guard);
    let mut ln2 = BigUint::zero();
    let mut k = 1u64;
    loop {
        let term = &scale / (BigUint::from(k) << k as usize);
        if term.is_zero() {
            break;
        }
        ln2 += term;
        k += 1;
    }
    let mut atanh = BigUint::zero();
    let mut j = 0u32;
    loop {
        let odd = 2 * j + 1;
        let term = &scale / (BigUint::from(odd) * BigUint::from(9u32).pow(odd));
        if term.is_zero() {
            break;
        }
        atanh += term;
        j += 1;
    }
    let ln10 = &ln2 * 3u32 + atanh * 2u32;
    ln2 * BigUint::from(10u32).pow(precision) / ln10
}

fn decimal_digits(x: &BigUint) -> u64 {
    x.to_str_radix(10).len() as u64
}

/// `log10(x)` in floating point, for any size of `x`.
fn log10_big(x: &BigUint) -> f64 {
    let s = x.to_str_radix(10);
    let lead: f64 = s[..s.len().min(17)].parse().unwrap();
    lead.log10() + (s.len() - s.len().min(17)) as f64
}

/// The sequence `k_0, …, k_d`, as long as every value stays within
/// `digit_budget` decimal digits.
pub fn unsplit_sequence(d: usize, digit_budget: usize) -> Result<Vec<BigUint>, BoundError> {
    if d == 0 {
        return Err(BoundError::ZeroDepth);
    }
    let log10_2 = std::f64::consts::LOG10_2;
    let mut seq = vec![BigUint::one()];
    for _ in 0..d {
        let k = seq.last().unwrap();
        let e = exponent(k, d);
        let estimate = e.to_f64().unwrap_or(f64::INFINITY) * log10_2 + log10_big(k);
        if estimate > digit_budget as f64 || e.bits() > 64 || e.to_u64().unwrap() > MAX_EXPONENT_BITS {
            return Err(BoundError::DigitBudget {
                d,
                budget: digit_budget,
            });
        }
        let next = (k << e.to_u64().unwrap() as usize) + 1u32;
        if decimal_digits(&next) > digit_budget as u64 {
            return Err(BoundError::DigitBudget {
                d,
                budget: digit_budget,
            });
        }
        seq.push(next);
    }
    seq.reverse();
    Ok(seq)
}

/// `N = k_0`, refused when it would exceed `digit_budget` decimal digits.
pub fn unsplit_size_bound(d: usize, digit_budget: usize) -> Result<BigUint, BoundError> {
    Ok(unsplit_sequence(d, digit_budget)?.swap_remove(0))
}

/// Number of decimal digits of `k_0`, available while `k_1` itself is
/// computable (`d ≤ 3`).
pub fn unsplit_size_digits(d: usize) -> Option<BigUint> {
    if d == 0 {
        return None;
    }
    // Run the recursion down to k_1 only.
    let mut k1 = BigUint::one();
    for _ in 0..d - 1 {
        let e = exponent(&k1, d);
        if e.bits() > 32 {
            return None;
        }
        k1 = (k1 << e.to_u64().unwrap() as usize) + 1u32;
    }
    let e = exponent(&k1, d);
    let precision = decimal_digits(&e) as u32 + 30;
    let scale = BigUint::from(10u32).pow(precision);
    let scaled = &e * log10_2_scaled(precision);
    let whole = &scaled / &scale;
    let frac_digits = (&scaled % &scale).to_str_radix(10);
    let padded = format!("{frac_digits:0>width$}", width = precision as usize);
    let frac: f64 = format!("0.{}", &padded[..17]).parse().unwrap();
    let total = frac + log10_big(&k1);
    Some(whole + BigUint::from(total.floor() as u64) + 1u32)
}

/// `x = 2^2^…^top` with `level` exponentiations; used for magnitudes far
/// beyond any representation.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Magnitude {
    level: u32,
    top: f64,
}

impl Magnitude {
    fn normalized(mut self) -> Self {
        while self.top > 2f64.powi(40) {
            self.top = self.top.log2();
            self.level += 1;
        }
        while self.level > 0 && self.top < 40.0 {
            self.top = 2f64.powf(self.top);
            self.level -= 1;
        }
        self
    }

    /// Smallest `h` with `twr(h) ≥ x`.
    fn tower_height(self) -> usize {
        let mut h = 0usize;
        let mut t = 0f64;
        while t < self.top {
            t = 2f64.powf(t);
            h += 1;
        }
        h + self.level as usize
    }
}

fn tower_height_exact(x: &BigUint) -> usize {
    let mut h = 0;
    let mut t = BigUint::zero();
    while &t < x {
        if t.bits() > 20 {
            // twr(h+1) = 2^t dwarfs anything we could hold.
            return h + 1;
        }
        t = BigUint::one() << t.to_u64().unwrap() as usize;
        h += 1;
    }
    h
}

/// Magnitude of `k_0` from the recursion, ignoring lower-order terms once
/// the numbers leave floating point.
fn magnitude(d: usize) -> Magnitude {
    let mut k = Magnitude { level: 0, top: 1.0 };
    for _ in 0..d {
        k = match k.level {
            0 => {
                let t = k.top;
                let e = t * (t - 1.0) / 2.0 + d as f64 * t + t.log2();
                Magnitude { level: 1, top: e }
            }
            1 => Magnitude {
                level: 2,
                top: 2.0 * k.top - 1.0,
            },
            2 => Magnitude {
                level: 3,
                top: k.top + 1.0,
            },
            _ => Magnitude {
                level: k.level + 1,
                top: k.top,
            },
        }
        .normalized();
    }
    k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub d: usize,
    /// Decimal value of `N`, when within the digit budget.
    pub value: Option<String>,
    /// Decimal digit count of `N`, when computable.
    pub digits: Option<String>,
    /// Smallest `h` with `twr(h) ≥ N`; exact only when the value is known,
    /// estimated from the digit count or the recursion otherwise.
    pub tower_height: usize,
    pub tower_height_exact: bool,
}

pub fn bound_summary(d: usize, digit_budget: usize) -> Result<BoundSummary, BoundError> {
    if d == 0 {
        return Err(BoundError::ZeroDepth);
    }
    if let Ok(n) = unsplit_size_bound(d, digit_budget) {
        return Ok(BoundSummary {
            d,
            digits: Some(decimal_digits(&n).to_string()),
            tower_height: tower_height_exact(&n),
            value: Some(n.to_string()),
            tower_height_exact: true,
        });
    }
    if let Some(digits) = unsplit_size_digits(d) {
        // N ≈ 10^digits, so log2 N ≈ digits · log2 10.
        let log2 = digits.to_f64().unwrap() * std::f64::consts::LOG2_10;
        let height = Magnitude { level: 1, top: log2 }.normalized().tower_height();
        return Ok(BoundSummary {
            d,
            value: None,
            digits: Some(digits.to_string()),
            tower_height: height,
            tower_height_exact: false,
        });
    }
    Ok(BoundSummary {
        d,
        value: None,
        digits: None,
        tower_height: magnitude(d).tower_height(),
        tower_height_exact: false,
    })
}
