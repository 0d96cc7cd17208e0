//! Combinatorics of a weighted circle action on `C^{n+1}`.
//!
//! The finite stabilizers are generated by the cyclic groups `Z_{b_k}`, so
//! everything is indexed by sectors `s = 0..ell` with `ell = lcm(b)`, and the
//! generator `zeta_s = exp(2 pi i s / ell)` rotates coordinate `k` by the
//! logweight `r_k(s) / ell` where `r_k(s) = b_k s mod ell`. Logweights are
//! only ever stored as those integer numerators.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::laurent::LaurentPoly;

/// Upper bound on `lcm(b)`; every sector gets its own quotient ring.
pub const MAX_SECTORS: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("the weight vector is empty")]
    Empty,
    #[error("weight b_{index} = {value} is not a positive integer")]
    NonPositive { index: usize, value: i64 },
    #[error("weight b_{index} ({text:?}) is not an integer")]
    Syntax { index: usize, text: String },
    #[error("lcm of the weights exceeds {MAX_SECTORS} sectors")]
    TooManySectors,
}

/// Positive integer weights `(b_0, ..., b_n)` of the circle action.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<u64>);

impl WeightVector {
    pub fn new(weights: &[i64]) -> Result<Self, WeightError> {
        if weights.is_empty() {
            return Err(WeightError::Empty);
        }
        weights
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                u64::try_from(value)
                    .ok()
                    .filter(|&b| b > 0)
                    .ok_or(WeightError::NonPositive { index, value })
            })
            .collect::<Result<_, _>>()
            .map(Self)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Complex dimension `n` of the quotient.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }
}

impl FromStr for WeightVector {
    type Err = WeightError;

    /// Comma-separated positive integers, e.g. `1,2,4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Err(WeightError::Empty);
        }
        let parsed = s
            .split(',')
            .enumerate()
            .map(|(index, part)| {
                let text = part.trim();
                text.parse::<i64>().map_err(|_| WeightError::Syntax {
                    index,
                    text: text.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&parsed)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Sector combinatorics for a fixed weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpsData {
    weights: WeightVector,
    ell: usize,
}

impl WpsData {
    pub fn new(weights: WeightVector) -> Result<Self, WeightError> {
        let mut ell: u64 = 1;
        for &b in weights.as_slice() {
            ell = ell.lcm(&b);
            if ell > MAX_SECTORS {
                return Err(WeightError::TooManySectors);
            }
        }
        Ok(Self {
            weights,
            ell: ell as usize,
        })
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// Order of the stabilizer group `Z_ell`.
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn coordinates(&self) -> usize {
        self.weights.len()
    }

    /// `[s + t]`, the sector of `zeta_s zeta_t`.
    pub fn sector_sum(&self, s: usize, t: usize) -> usize {
        (s + t) % self.ell
    }

    /// Numerator `r_k(s) = b_k s mod ell` of the logweight `a_k(zeta_s)`.
    pub fn logweight_numerator(&self, k: usize, s: usize) -> usize {
        assert!(s < self.ell, "sector {s} out of range for ell = {}", self.ell);
        ((self.weights.0[k] as u128 * s as u128) % self.ell as u128) as usize
    }

    /// `a_k(zeta_s)` as a reduced fraction `(numerator, denominator)`.
    pub fn logweight(&self, k: usize, s: usize) -> (usize, usize) {
        let r = self.logweight_numerator(k, s);
        let g = r.gcd(&self.ell);
        (r / g, self.ell / g)
    }

    /// Rows `k = 0..=n` of numerators `r_k(s)` for `s = 0..ell`.
    pub fn logweight_table(&self) -> Vec<Vec<usize>> {
        (0..self.coordinates())
            .map(|k| (0..self.ell).map(|s| self.logweight_numerator(k, s)).collect())
            .collect()
    }

    /// Coordinates `k` fixed by `zeta_s`, i.e. those with `r_k(s) = 0`.
    pub fn fixed_coordinates(&self, s: usize) -> Vec<usize> {
        (0..self.coordinates())
            .filter(|&k| self.logweight_numerator(k, s) == 0)
            .collect()
    }

    /// `ell * (a_k(s) + a_k(t) - a_k(s t))`, before dividing by `ell`.
    pub fn obstruction_numerator(&self, k: usize, s: usize, t: usize) -> i64 {
        self.logweight_numerator(k, s) as i64 + self.logweight_numerator(k, t) as i64
            - self.logweight_numerator(k, self.sector_sum(s, t)) as i64
    }

    /// Exponent of `(1 - u^{-b_k})` in `alpha_s * alpha_t`; always 0 or 1.
    pub fn obstruction_exponent(&self, k: usize, s: usize, t: usize) -> u8 {
        let num = self.obstruction_numerator(k, s, t);
        let ell = self.ell as i64;
        assert!(
            num == 0 || num == ell,
            "obstruction numerator {num} is not 0 or {ell}"
        );
        (num / ell) as u8
    }

    /// Coordinates contributing an Euler-class factor to `alpha_s * alpha_t`.
    pub fn structure_factors(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.coordinates())
            .filter(|&k| self.obstruction_exponent(k, s, t) == 1)
            .collect()
    }

    /// `C(s, t)` with `alpha_s * alpha_t = C(s, t) alpha_{[s+t]}`.
    pub fn structure_coefficient(&self, s: usize, t: usize) -> LaurentPoly {
        self.euler_product(&self.structure_factors(s, t))
    }

    /// Generator of the Kirwan kernel on sector `s`: the product of the Euler
    /// classes of the coordinates fixed by `zeta_s`. Empty product is 1.
    pub fn kernel_generator(&self, s: usize) -> LaurentPoly {
        self.euler_product(&self.fixed_coordinates(s))
    }

    /// `prod_{k in coords} (1 - u^{-b_k})`.
    pub fn euler_product(&self, coords: &[usize]) -> LaurentPoly {
        coords.iter().fold(LaurentPoly::one(), |acc, &k| {
            let e = LaurentPoly::euler_class(self.weights.0[k] as i64)
                .expect("weights are positive");
            &acc * &e
        })
    }

    /// Weights `b_k` for the given coordinates.
    pub fn weights_of(&self, coords: &[usize]) -> Vec<u64> {
        coords.iter().map(|&k| self.weights.0[k]).collect()
    }
}

/// Builds the sector data for `weights`.
pub fn build_wps(weights: WeightVector) -> Result<WpsData, WeightError> {
    WpsData::new(weights)
}
