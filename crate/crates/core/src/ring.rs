//! The full orbifold K-theory ring as a direct sum of sector quotients.
//!
//! Sector `s` contributes `Z[u, u^-1] / <g_s>` where `g_s` is the kernel
//! generator from [`WpsData::kernel_generator`]. After multiplying by a unit
//! `±u^N`, each `g_s` is a monic polynomial with constant term `±1`, so the
//! quotient is free over `Z` with basis `1, u, ..., u^{rank-1}` and `u` is
//! invertible in it. Elements are stored as one fully reduced residue per
//! sector; ideal membership is just "reduces to zero".

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::laurent::{LaurentError, LaurentPoly, MonicPoly, Normalization};
use crate::sectors::{WeightError, WeightVector, WpsData};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KorbError {
    #[error(transparent)]
    Weights(#[from] WeightError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("sector {sector} is out of range (ell = {ell})")]
    SectorOutOfRange { sector: usize, ell: usize },
    #[error("elements belong to different rings (weights {left} and {right})")]
    MismatchedRing { left: WeightVector, right: WeightVector },
    #[error("kernel generator of sector {sector} is not a unit multiple of a monic polynomial with constant term ±1")]
    NotUnitMonic { sector: usize },
    #[error("element spec error at position {position}: {message}")]
    ElementSpec { position: usize, message: String },
}

#[derive(Debug)]
struct Quotient {
    generator: LaurentPoly,
    modulus: MonicPoly,
    u_inverse: LaurentPoly,
}

impl Quotient {
    fn new(sector: usize, generator: LaurentPoly) -> Result<Self, KorbError> {
        let modulus = generator
            .normalize()?
            .into_monic()
            .filter(|g| g.degree() == 0 || g.constant_term().abs().is_one())
            .ok_or(KorbError::NotUnitMonic { sector })?;
        // g = g0 + u h with g0 = ±1, so u * (-g0 h) = 1 modulo g.
        let u_inverse = if modulus.degree() == 0 {
            LaurentPoly::zero()
        } else {
            let g0 = modulus.constant_term().clone();
            LaurentPoly::from_coeffs(modulus.coeffs()[1..].iter().map(|c| -(c * &g0)))
        };
        Ok(Self {
            generator,
            modulus,
            u_inverse,
        })
    }
}

/// The quotient ring attached to one sector.
#[derive(Debug, Clone)]
pub struct SectorRing {
    sector: usize,
    fixed: Vec<usize>,
    quotient: Arc<Quotient>,
}

impl SectorRing {
    pub fn sector(&self) -> usize {
        self.sector
    }

    /// Coordinates fixed by `zeta_s`.
    pub fn fixed(&self) -> &[usize] {
        &self.fixed
    }

    /// Kernel generator as a Laurent polynomial (unnormalized).
    pub fn generator(&self) -> &LaurentPoly {
        &self.quotient.generator
    }

    /// Normalized generator used for reduction.
    pub fn modulus(&self) -> &MonicPoly {
        &self.quotient.modulus
    }

    /// Class of `u^-1`.
    pub fn u_inverse(&self) -> &LaurentPoly {
        &self.quotient.u_inverse
    }

    /// Rank of the sector as a free `Z`-module.
    pub fn rank(&self) -> usize {
        self.quotient.modulus.degree()
    }

    fn rem(&self, x: &LaurentPoly) -> LaurentPoly {
        self.quotient
            .modulus
            .rem(x)
            .expect("reduction input is a polynomial")
    }

    fn mul_mod(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        self.rem(&(a * b))
    }

    /// Canonical residue of `x`: a polynomial of degree `< rank`.
    pub fn reduce(&self, x: &LaurentPoly) -> LaurentPoly {
        if self.rank() == 0 || x.is_zero() {
            return LaurentPoly::zero();
        }
        let lift = x.min_exponent().map_or(0, |e| (-e).max(0));
        let r = self.rem(&x.shift(lift));
        if lift == 0 || r.is_zero() {
            return r;
        }
        // multiply by the class of u^-lift
        let mut base = self.quotient.u_inverse.clone();
        let mut power = LaurentPoly::one();
        let mut n = lift as u64;
        while n > 0 {
            if n & 1 == 1 {
                power = self.mul_mod(&power, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul_mod(&base, &base);
            }
        }
        self.mul_mod(&r, &power)
    }

    /// Whether `x` lies in the kernel ideal of this sector.
    pub fn contains(&self, x: &LaurentPoly) -> bool {
        self.reduce(x).is_zero()
    }
}

/// Builds one [`SectorRing`] per sector. Sectors with the same fixed
/// coordinates share their quotient.
pub fn build_sector_rings(data: &WpsData) -> Result<Vec<SectorRing>, KorbError> {
    let mut cache: HashMap<Vec<usize>, Arc<Quotient>> = HashMap::new();
    (0..data.ell())
        .map(|s| {
            let fixed = data.fixed_coordinates(s);
            let quotient = match cache.get(&fixed) {
                Some(q) => Arc::clone(q),
                None => {
                    let q = Arc::new(Quotient::new(s, data.euler_product(&fixed))?);
                    cache.insert(fixed.clone(), Arc::clone(&q));
                    q
                }
            };
            Ok(SectorRing {
                sector: s,
                fixed,
                quotient,
            })
        })
        .collect()
}

pub fn total_rank(rings: &[SectorRing]) -> usize {
    rings.iter().map(SectorRing::rank).sum()
}

/// An element of the orbifold K-theory ring: one reduced residue per sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KOrbElement {
    weights: Arc<WeightVector>,
    comps: Vec<LaurentPoly>,
}

impl KOrbElement {
    pub fn components(&self) -> &[LaurentPoly] {
        &self.comps
    }

    pub fn component(&self, s: usize) -> Option<&LaurentPoly> {
        self.comps.get(s)
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(LaurentPoly::is_zero)
    }

    /// Nonzero components in ascending sector order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> + '_ {
        self.comps.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl fmt::Display for KOrbElement {
    /// `s:<residue>;...` over the nonzero sectors, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.support().map(|(s, c)| format!("{s}:{c}")).collect();
        f.write_str(&parts.join(";"))
    }
}

/// `alpha_s * alpha_t = coefficient * alpha_target`, before reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRelation {
    pub left: usize,
    pub right: usize,
    pub target: usize,
    /// Weights `b_k` of the Euler-class factors, in coordinate order.
    pub factor_weights: Vec<u64>,
    pub coefficient: LaurentPoly,
}

/// `generator * alpha_sector` generates the Kirwan kernel on `sector`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRelation {
    pub sector: usize,
    pub factor_weights: Vec<u64>,
    pub generator: LaurentPoly,
}

/// The relation `alpha_0 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct UnitRelation;

/// Generators `alpha_0..alpha_{ell-1}` over `Z[u, u^-1]` with the product
/// relations `I`, the kernel relations `J` and `alpha_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub weights: WeightVector,
    pub ell: usize,
    pub relations_i: Vec<ProductRelation>,
    pub relations_j: Vec<KernelRelation>,
    pub unit_relation: UnitRelation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorTorsion {
    pub sector: usize,
    pub rank: usize,
    /// `sum of b_k over the fixed coordinates`.
    pub expected_rank: usize,
    pub leading: BigInt,
    pub constant_term: BigInt,
}

impl SectorTorsion {
    pub fn passed(&self) -> bool {
        self.leading.is_one()
            && (self.rank == 0 || self.constant_term.abs().is_one())
            && self.rank == self.expected_rank
    }
}

/// Per-sector check that the normalized kernel generator is monic with unit
/// constant term, so the sector quotient has no additive torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionReport {
    pub sectors: Vec<SectorTorsion>,
}

impl TorsionReport {
    pub fn passed(&self) -> bool {
        self.sectors.iter().all(SectorTorsion::passed)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.sectors.iter().map(|s| s.rank).collect()
    }

    pub fn failures(&self) -> impl Iterator<Item = &SectorTorsion> {
        self.sectors.iter().filter(|s| !s.passed())
    }
}

/// Checks the normalization of every kernel generator of `data`. Works
/// directly from the generators, without building the sector rings.
pub fn torsion_report(data: &WpsData) -> TorsionReport {
    let mut cache: HashMap<Vec<usize>, Normalization> = HashMap::new();
    let sectors = (0..data.ell())
        .map(|s| {
            let fixed = data.fixed_coordinates(s);
            let expected_rank = data.weights_of(&fixed).iter().sum::<u64>() as usize;
            let norm = cache.entry(fixed).or_insert_with_key(|fixed| {
                data.euler_product(fixed)
                    .normalize()
                    .expect("a product of Euler classes is nonzero")
            });
            SectorTorsion {
                sector: s,
                rank: norm.degree(),
                expected_rank,
                leading: norm.leading().clone(),
                constant_term: norm.constant_term().clone(),
            }
        })
        .collect();
    TorsionReport { sectors }
}

/// Largest `ell` for which the cocycle identity is checked on every triple.
pub const EXHAUSTIVE_COCYCLE_LIMIT: usize = 60;
/// Largest `ell` for which symmetry and the unit law are checked on every pair.
pub const EXHAUSTIVE_PAIR_LIMIT: usize = 2048;
/// Random elements are supported on every sector up to this `ell`, and on
/// [`SPARSE_SUPPORT`] random sectors beyond it.
pub const DENSE_ELEMENT_LIMIT: usize = 16;
pub const SPARSE_SUPPORT: usize = 3;
/// Residue coefficients of random elements are drawn from `-9..=9`.
pub const RANDOM_COEFF_BOUND: i64 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub weights: WeightVector,
    pub seed: u64,
    pub trials: usize,
    pub cocycle_exhaustive: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed())
    }

    /// One-line summary such as
    /// `PASS (cocycle exhaustive; 500 random associativity trials)`.
    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!(
                "PASS (cocycle {}; {} random associativity trials)",
                if self.cocycle_exhaustive { "exhaustive" } else { "sampled" },
                self.trials
            ),
            Some(c) => format!(
                "FAIL ({}: {})",
                c.name,
                c.counterexample.as_deref().unwrap_or_default()
            ),
        }
    }
}

/// The orbifold K-theory ring of the weighted projective space `P(b)`.
#[derive(Debug, Clone)]
pub struct KOrbRing {
    data: WpsData,
    weights: Arc<WeightVector>,
    sectors: Vec<SectorRing>,
}

impl KOrbRing {
    pub fn new(weights: WeightVector) -> Result<Self, KorbError> {
        Self::from_data(WpsData::new(weights)?)
    }

    pub fn from_data(data: WpsData) -> Result<Self, KorbError> {
        let sectors = build_sector_rings(&data)?;
        Ok(Self {
            weights: Arc::new(data.weights().clone()),
            data,
            sectors,
        })
    }

    pub fn data(&self) -> &WpsData {
        &self.data
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn ell(&self) -> usize {
        self.data.ell()
    }

    pub fn sectors(&self) -> &[SectorRing] {
        &self.sectors
    }

    pub fn sector(&self, s: usize) -> Result<&SectorRing, KorbError> {
        self.sectors.get(s).ok_or(KorbError::SectorOutOfRange {
            sector: s,
            ell: self.ell(),
        })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.sectors.iter().map(SectorRing::rank).collect()
    }

    pub fn total_rank(&self) -> usize {
        total_rank(&self.sectors)
    }

    pub fn reduce(&self, s: usize, x: &LaurentPoly) -> Result<LaurentPoly, KorbError> {
        Ok(self.sector(s)?.reduce(x))
    }

    pub fn zero(&self) -> KOrbElement {
        KOrbElement {
            weights: Arc::clone(&self.weights),
            comps: vec![LaurentPoly::zero(); self.ell()],
        }
    }

    /// `alpha_0`, the multiplicative identity.
    pub fn one(&self) -> KOrbElement {
        self.generator(0).expect("sector 0 always exists")
    }

    /// The class of `alpha_s`; zero when sector `s` is collapsed.
    pub fn generator(&self, s: usize) -> Result<KOrbElement, KorbError> {
        self.element([(s, LaurentPoly::one())])
    }

    /// Sums `x_s alpha_s` over the given pairs and reduces.
    pub fn element<I>(&self, comps: I) -> Result<KOrbElement, KorbError>
    where
        I: IntoIterator<Item = (usize, LaurentPoly)>,
    {
        let mut acc = vec![LaurentPoly::zero(); self.ell()];
        for (s, x) in comps {
            self.sector(s)?;
            acc[s] += &x;
        }
        Ok(self.reduced(acc))
    }

    fn reduced(&self, comps: Vec<LaurentPoly>) -> KOrbElement {
        let comps = comps
            .into_iter()
            .zip(&self.sectors)
            .map(|(x, ring)| ring.reduce(&x))
            .collect();
        KOrbElement {
            weights: Arc::clone(&self.weights),
            comps,
        }
    }

    /// Parses `s:<poly>[;s:<poly>...]`; repeated sectors are summed. A bare
    /// `0` is the zero element.
    pub fn parse_element(&self, spec: &str) -> Result<KOrbElement, KorbError> {
        if spec.trim() == "0" {
            return Ok(self.zero());
        }
        let mut comps = Vec::new();
        let mut offset = 0;
        for part in spec.split(';') {
            let Some((head, body)) = part.split_once(':') else {
                return Err(KorbError::ElementSpec {
                    position: offset,
                    message: format!("expected 's:<poly>', found {part:?}"),
                });
            };
            let s = head.trim().parse::<usize>().map_err(|_| KorbError::ElementSpec {
                position: offset,
                message: format!("invalid sector index {:?}", head.trim()),
            })?;
            let body_offset = offset + head.chars().count() + 1;
            let x = body.parse::<LaurentPoly>().map_err(|e| match e {
                LaurentError::Parse { position, message } => KorbError::ElementSpec {
                    position: body_offset + position,
                    message,
                },
                other => other.into(),
            })?;
            comps.push((s, x));
            offset += part.chars().count() + 1;
        }
        self.element(comps)
    }

    fn check_same(&self, x: &KOrbElement) -> Result<(), KorbError> {
        if Arc::ptr_eq(&self.weights, &x.weights) || *self.weights == *x.weights {
            Ok(())
        } else {
            Err(KorbError::MismatchedRing {
                left: (*self.weights).clone(),
                right: (*x.weights).clone(),
            })
        }
    }

    pub fn add(&self, x: &KOrbElement, y: &KOrbElement) -> Result<KOrbElement, KorbError> {
        self.check_same(x)?;
        self.check_same(y)?;
        Ok(KOrbElement {
            weights: Arc::clone(&self.weights),
            comps: x.comps.iter().zip(&y.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, x: &KOrbElement, y: &KOrbElement) -> Result<KOrbElement, KorbError> {
        self.check_same(x)?;
        self.check_same(y)?;
        Ok(KOrbElement {
            weights: Arc::clone(&self.weights),
            comps: x.comps.iter().zip(&y.comps).map(|(a, b)| a - b).collect(),
        })
    }

    /// Module action of `c` in `Z[u, u^-1]`.
    pub fn scale(&self, c: &LaurentPoly, x: &KOrbElement) -> Result<KOrbElement, KorbError> {
        self.check_same(x)?;
        Ok(self.reduced(x.comps.iter().map(|a| c * a).collect()))
    }

    /// The twisted product: `(x * y)_t = sum_{[s+s']=t} x_s y_s' C(s, s')`,
    /// reduced in sector `t`.
    pub fn star_multiply(&self, x: &KOrbElement, y: &KOrbElement) -> Result<KOrbElement, KorbError> {
        self.check_same(x)?;
        self.check_same(y)?;
        let mut acc = vec![LaurentPoly::zero(); self.ell()];
        for (s, xs) in x.support() {
            for (t, yt) in y.support() {
                let target = self.data.sector_sum(s, t);
                if self.sectors[target].rank() == 0 {
                    continue;
                }
                let c = self.data.structure_coefficient(s, t);
                acc[target] += &(&(xs * yt) * &c);
            }
        }
        Ok(self.reduced(acc))
    }

    /// All `alpha_s * alpha_t` for `s <= t`, coefficients left unreduced.
    pub fn generator_table(&self) -> Vec<ProductRelation> {
        let ell = self.ell();
        let mut out = Vec::with_capacity(ell * (ell + 1) / 2);
        for s in 0..ell {
            for t in s..ell {
                let factors = self.data.structure_factors(s, t);
                out.push(ProductRelation {
                    left: s,
                    right: t,
                    target: self.data.sector_sum(s, t),
                    factor_weights: self.data.weights_of(&factors),
                    coefficient: self.data.euler_product(&factors),
                });
            }
        }
        out
    }

    pub fn kernels(&self) -> Vec<KernelRelation> {
        self.sectors
            .iter()
            .map(|ring| KernelRelation {
                sector: ring.sector,
                factor_weights: self.data.weights_of(&ring.fixed),
                generator: ring.generator().clone(),
            })
            .collect()
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            weights: (*self.weights).clone(),
            ell: self.ell(),
            relations_i: self.generator_table(),
            relations_j: self.kernels(),
            unit_relation: UnitRelation,
        }
    }

    pub fn torsion_report(&self) -> TorsionReport {
        torsion_report(&self.data)
    }

    /// Random element with residue coefficients in `-9..=9`.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> KOrbElement {
        let ell = self.ell();
        let sectors: Vec<usize> = if ell <= DENSE_ELEMENT_LIMIT {
            (0..ell).collect()
        } else {
            (0..SPARSE_SUPPORT).map(|_| rng.gen_range(0..ell)).collect()
        };
        let mut comps = vec![LaurentPoly::zero(); ell];
        for s in sectors {
            let rank = self.sectors[s].rank();
            comps[s] = LaurentPoly::from_coeffs(
                (0..rank).map(|_| rng.gen_range(-RANDOM_COEFF_BOUND..=RANDOM_COEFF_BOUND)),
            );
        }
        KOrbElement {
            weights: Arc::clone(&self.weights),
            comps,
        }
    }

    /// Checks the ring axioms: exponent identities on sectors, then random
    /// associativity, commutativity, distributivity, the unit law and the
    /// multiplicativity of reduction. Deterministic in `seed`; trial `i` draws
    /// from its own ChaCha stream `i`.
    pub fn verify(&self, trials: usize, seed: u64) -> VerifyReport {
        let mut checks = exponent_checks(&self.data, trials, seed);
        checks.extend(self.random_checks(trials, seed));
        VerifyReport {
            weights: (*self.weights).clone(),
            seed,
            trials,
            cocycle_exhaustive: self.ell() <= EXHAUSTIVE_COCYCLE_LIMIT,
            checks,
        }
    }

    fn random_checks(&self, trials: usize, seed: u64) -> Vec<CheckOutcome> {
        const NAMES: [&str; 5] = [
            "associativity",
            "commutativity",
            "distributivity",
            "unit",
            "reduce homomorphism",
        ];
        let failures: Vec<[Option<String>; 5]> = (0..trials)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i as u64);
                self.trial(&mut rng)
            })
            .collect();
        NAMES
            .iter()
            .enumerate()
            .map(|(j, &name)| CheckOutcome {
                name,
                cases: trials,
                counterexample: failures
                    .iter()
                    .enumerate()
                    .find_map(|(i, f)| f[j].as_ref().map(|m| format!("trial {i}: {m}"))),
            })
            .collect()
    }

    fn trial(&self, rng: &mut ChaCha8Rng) -> [Option<String>; 5] {
        let mul = |a: &KOrbElement, b: &KOrbElement| self.star_multiply(a, b).expect("same ring");
        let x = self.random_element(rng);
        let y = self.random_element(rng);
        let z = self.random_element(rng);
        let show = |xs: &[&KOrbElement]| {
            xs.iter()
                .map(|e| format!("[{e}]"))
                .collect::<Vec<_>>()
                .join(", ")
        };

        let assoc = (mul(&mul(&x, &y), &z) != mul(&x, &mul(&y, &z)))
            .then(|| format!("x, y, z = {}", show(&[&x, &y, &z])));
        let comm = (mul(&x, &y) != mul(&y, &x)).then(|| format!("x, y = {}", show(&[&x, &y])));
        let yz = self.add(&y, &z).expect("same ring");
        let distrib = (mul(&x, &yz) != self.add(&mul(&x, &y), &mul(&x, &z)).expect("same ring"))
            .then(|| format!("x, y, z = {}", show(&[&x, &y, &z])));
        let one = self.one();
        let unit = (mul(&one, &x) != x || mul(&x, &one) != x).then(|| format!("x = {}", show(&[&x])));

        let s = rng.gen_range(0..self.ell());
        let ring = &self.sectors[s];
        let a = random_laurent(rng);
        let b = random_laurent(rng);
        let (ra, rb) = (ring.reduce(&a), ring.reduce(&b));
        let hom = if ring.reduce(&(&a * &b)) != ring.reduce(&(&ra * &rb)) {
            Some(format!("sector {s}: reduce(ab) != reduce(reduce(a) reduce(b)) for a = {a}, b = {b}"))
        } else if ring.reduce(&ra) != ra {
            Some(format!("sector {s}: reduce is not idempotent on {a}"))
        } else if ring.reduce(&(&a + &b)) != &ra + &rb {
            Some(format!("sector {s}: reduce is not additive on {a}, {b}"))
        } else if !ra.is_polynomial() || ra.max_exponent().is_some_and(|e| e as usize >= ring.rank()) {
            Some(format!("sector {s}: residue {ra} of {a} has degree >= rank {}", ring.rank()))
        } else {
            None
        };
        [assoc, comm, distrib, unit, hom]
    }
}

/// Random Laurent polynomial with up to 6 terms, exponents in `-10..=10`
/// and coefficients in `-9..=9`.
pub fn random_laurent<R: Rng>(rng: &mut R) -> LaurentPoly {
    let n = rng.gen_range(0..=6);
    LaurentPoly::from_terms((0..n).map(|_| {
        (
            rng.gen_range(-10..=10i64),
            rng.gen_range(-RANDOM_COEFF_BOUND..=RANDOM_COEFF_BOUND),
        )
    }))
}

/// Exponent-level checks: every obstruction exponent is 0 or 1, it is
/// symmetric with `e(0, s) = 0`, and it satisfies the 2-cocycle identity
/// `e(s,t) + e(s+t,v) = e(s,t+v) + e(t,v)` coordinatewise.
pub fn exponent_checks(data: &WpsData, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let ell = data.ell();
    let n = data.coordinates();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0c1);

    let pairs: Vec<(usize, usize)> = if ell <= EXHAUSTIVE_PAIR_LIMIT {
        (0..ell).flat_map(|s| (0..ell).map(move |t| (s, t))).collect()
    } else {
        (0..samples.max(1))
            .map(|_| (rng.gen_range(0..ell), rng.gen_range(0..ell)))
            .collect()
    };
    let triples: Vec<(usize, usize, usize)> = if ell <= EXHAUSTIVE_COCYCLE_LIMIT {
        (0..ell)
            .flat_map(|s| (0..ell).flat_map(move |t| (0..ell).map(move |v| (s, t, v))))
            .collect()
    } else {
        (0..samples.max(1))
            .map(|_| (rng.gen_range(0..ell), rng.gen_range(0..ell), rng.gen_range(0..ell)))
            .collect()
    };

    let exponent = |k, s, t| {
        let num = data.obstruction_numerator(k, s, t);
        (num == 0 || num == ell as i64).then_some(num / ell as i64)
    };

    let range = pairs.iter().find_map(|&(s, t)| {
        (0..n).find_map(|k| {
            exponent(k, s, t).is_none().then(|| {
                format!(
                    "k = {k}, s = {s}, t = {t}: numerator {}",
                    data.obstruction_numerator(k, s, t)
                )
            })
        })
    });
    let symmetry = pairs.iter().find_map(|&(s, t)| {
        (0..n).find_map(|k| {
            (data.obstruction_numerator(k, s, t) != data.obstruction_numerator(k, t, s))
                .then(|| format!("k = {k}, s = {s}, t = {t}"))
        })
    });
    let unit = (0..ell.min(EXHAUSTIVE_PAIR_LIMIT)).find_map(|s| {
        (0..n).find_map(|k| {
            (data.obstruction_numerator(k, 0, s) != 0).then(|| format!("k = {k}, s = {s}"))
        })
    });
    let cocycle = triples.par_iter().find_map_first(|&(s, t, v)| {
        (0..n).find_map(|k| {
            let lhs = data.obstruction_numerator(k, s, t)
                + data.obstruction_numerator(k, data.sector_sum(s, t), v);
            let rhs = data.obstruction_numerator(k, s, data.sector_sum(t, v))
                + data.obstruction_numerator(k, t, v);
            (lhs != rhs).then(|| format!("k = {k}, s = {s}, t = {t}, v = {v}"))
        })
    });

    vec![
        CheckOutcome {
            name: "exponent range",
            cases: pairs.len(),
            counterexample: range,
        },
        CheckOutcome {
            name: "exponent symmetry",
            cases: pairs.len(),
            counterexample: symmetry,
        },
        CheckOutcome {
            name: "exponent unit",
            cases: ell.min(EXHAUSTIVE_PAIR_LIMIT),
            counterexample: unit,
        },
        CheckOutcome {
            name: "exponent cocycle",
            cases: triples.len(),
            counterexample: cocycle,
        },
    ]
}

/// Verifies the ring axioms for `data` with `trials` random trials.
pub fn verify(data: &WpsData, trials: usize, seed: u64) -> Result<VerifyReport, KorbError> {
    Ok(KOrbRing::from_data(data.clone())?.verify(trials, seed))
}

impl fmt::Display for ProductRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "α{}α{} - {}",
            self.left,
            self.right,
            factored_times(&self.factor_weights, &format!("α{}", self.target))
        )
    }
}

impl fmt::Display for KernelRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "α{}", self.sector)?;
        if !self.factor_weights.is_empty() {
            f.write_str(&factored(&self.factor_weights))?;
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (0..self.ell).map(|s| format!("α{s}")).collect();
        writeln!(
            f,
            "K_orb(P({})) = Z[u,u^-1][{}] / (I + <α0 - 1> + J)",
            self.weights,
            gens.join(",")
        )?;
        writeln!(f, "I:")?;
        for r in &self.relations_i {
            writeln!(f, "  {r}")?;
        }
        writeln!(f, "J:")?;
        for r in &self.relations_j {
            writeln!(f, "  {r}")?;
        }
        write!(f, "unit:\n  α0 - 1")
    }
}

/// Product of Euler classes `(1-u^-b)` in compact text form. Repeated
/// weights are collected into powers; the empty product is `1`.
pub fn factored(weights: &[u64]) -> String {
    factored_with(weights, |b, p| match p {
        1 => format!("(1-u^-{b})"),
        p => format!("(1-u^-{b})^{p}"),
    })
}

/// LaTeX form of [`factored`], e.g. `(1-u^{-1})(1-u^{-2})`.
pub fn factored_latex(weights: &[u64]) -> String {
    factored_with(weights, |b, p| match p {
        1 => format!("(1-u^{{-{b}}})"),
        p => format!("(1-u^{{-{b}}})^{{{p}}}"),
    })
}

/// `factors` followed by `rest`, dropping an empty product.
pub fn factored_times(weights: &[u64], rest: &str) -> String {
    if weights.is_empty() {
        rest.to_string()
    } else {
        format!("{}{rest}", factored(weights))
    }
}

fn factored_with(weights: &[u64], render: impl Fn(u64, usize) -> String) -> String {
    if weights.is_empty() {
        return "1".to_string();
    }
    let mut sorted = weights.to_vec();
    sorted.sort_unstable();
    let mut out = String::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&b| b == sorted[i]).count();
        out.push_str(&render(sorted[i], j));
        i += j;
    }
    out
}
