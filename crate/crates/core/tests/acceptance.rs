//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use korb_core::cli::{self, Format};
use korb_core::ring::exponent_checks;
use korb_core::{divmod_monic, torsion_report, KOrbRing, LaurentPoly, WeightVector, WpsData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SWEEP_SIZE: usize = 200;
const SWEEP_SEED: u64 = 0x6b6f_7262;

type Outcome = Result<String, String>;
type Cell = ((usize, usize), (usize, &'static [u64]));
type Criterion = (&'static str, fn() -> Outcome);

fn weights(b: &[i64]) -> WeightVector {
    WeightVector::new(b).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })
}

/// 200 weight vectors with 2..=6 entries in 1..=12.
fn sweep() -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    (0..SWEEP_SIZE)
        .map(|_| {
            let n = rng.gen_range(1..=5);
            (0..=n).map(|_| rng.gen_range(1..=12)).collect()
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn brute_ell(b: &[i64]) -> u64 {
    b.iter().fold(1, |l, &x| l / gcd(l, x as u64) * x as u64)
}

fn brute_rank(b: &[i64], ell: u64, s: u64) -> usize {
    b.iter()
        .filter(|&&x| (x as u64 * s).is_multiple_of(ell))
        .map(|&x| x as usize)
        .sum()
}

fn grid_row<'a>(body: &'a str, label: &str) -> Vec<&'a str> {
    body.lines()
        .find(|l| l.starts_with(label))
        .map(|l| l.split('|').skip(1).map(str::trim).collect())
        .unwrap_or_default()
}

fn golden_chart() -> Outcome {
    let start = Instant::now();
    let doc = cli::cmd_chart(&weights(&[1, 2, 4]), Format::Text).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let data = WpsData::new(weights(&[1, 2, 4])).unwrap();
    ensure(data.ell() == 4, || format!("ell = {}", data.ell()))?;
    let body = doc.body;
    let checks: [(&str, &[&str]); 5] = [
        ("ζ_s", &["1", "i", "-1", "-i"]),
        ("(ℂ³)^ζ_s", &["ℂ³", "ℂ₍₄₎", "ℂ₍₂₎⊕ℂ₍₄₎", "ℂ₍₄₎"]),
        ("a_0(ζ_s)", &["0", "1/4", "1/2", "3/4"]),
        ("a_1(ζ_s)", &["0", "1/2", "0", "1/2"]),
        ("a_2(ζ_s)", &["0", "0", "0", "0"]),
    ];
    for (label, expected) in checks {
        let row = grid_row(&body, label);
        ensure(row == expected, || format!("row {label}: {row:?}"))?;
    }
    ensure(grid_row(&body, "generator") == ["α0", "α1", "α2", "α3"], || {
        "generator row".into()
    })?;
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_korb"))
        .args(["chart", "1,2,4"])
        .output()
        .map_err(|e| e.to_string())?;
    let process = start.elapsed();
    ensure(out.status.success(), || "korb chart failed".into())?;
    ensure(String::from_utf8_lossy(&out.stdout).trim_end() == body, || {
        "binary output differs from library rendering".into()
    })?;
    within(elapsed, Duration::from_millis(100))?;
    within(process, Duration::from_millis(100))?;
    Ok(format!("chart matches, rendered in {elapsed:?}, `korb chart` ran in {process:?}"))
}

/// The worked multiplication table: `(s, t) -> (target, Euler-class weights)`.
const TABLE_124: [Cell; 6] = [
    ((1, 1), (2, &[2])),
    ((1, 2), (3, &[])),
    ((1, 3), (0, &[1, 2])),
    ((2, 2), (0, &[1])),
    ((2, 3), (1, &[1])),
    ((3, 3), (2, &[1, 2])),
];

const KERNELS_124: [&[u64]; 4] = [&[1, 2, 4], &[4], &[2, 4], &[4]];

fn golden_table() -> Outcome {
    let ring = KOrbRing::new(weights(&[1, 2, 4])).unwrap();
    let table = ring.generator_table();
    for ((s, t), (target, factors)) in TABLE_124 {
        let entry = table
            .iter()
            .find(|r| r.left == s && r.right == t)
            .ok_or_else(|| format!("missing cell ({s},{t})"))?;
        ensure(entry.target == target && entry.factor_weights == factors, || {
            format!("cell ({s},{t}): {entry:?}")
        })?;
        let expanded = factors.iter().fold(LaurentPoly::one(), |acc, &b| {
            &acc * &LaurentPoly::euler_class(b as i64).unwrap()
        });
        ensure(entry.coefficient == expanded, || format!("cell ({s},{t}) coefficient"))?;
    }
    let text = cli::cmd_table(&weights(&[1, 2, 4]), Format::Text).unwrap().body;
    let expected_rows: [&[&str]; 3] = [
        &["(1-u^-2)α2", "α3", "(1-u^-1)(1-u^-2)α0"],
        &["", "(1-u^-1)α0", "(1-u^-1)α1"],
        &["", "", "(1-u^-1)(1-u^-2)α2"],
    ];
    for (i, expected) in expected_rows.iter().enumerate() {
        let row = grid_row(&text, &format!("α{} ", i + 1));
        ensure(row == *expected, || format!("text row α{}: {row:?}", i + 1))?;
    }
    Ok("6 cells match".into())
}

fn golden_kernels() -> Outcome {
    let ring = KOrbRing::new(weights(&[1, 2, 4])).unwrap();
    let kernels = ring.kernels();
    ensure(kernels.len() == 4, || format!("{} kernels", kernels.len()))?;
    for (k, expected) in kernels.iter().zip(KERNELS_124) {
        ensure(k.factor_weights == expected, || {
            format!("sector {}: {:?}", k.sector, k.factor_weights)
        })?;
        let product = expected.iter().fold(LaurentPoly::one(), |acc, &b| {
            &acc * &LaurentPoly::euler_class(b as i64).unwrap()
        });
        ensure(k.generator == product, || format!("sector {} generator", k.sector))?;
    }
    let text = cli::cmd_kernels(&weights(&[1, 2, 4]), Format::Text).unwrap().body;
    let expected = [
        "ker(κ0) = ⟨α0(1-u^-1)(1-u^-2)(1-u^-4)⟩",
        "ker(κ1) = ⟨α1(1-u^-4)⟩",
        "ker(κ2) = ⟨α2(1-u^-2)(1-u^-4)⟩",
        "ker(κ3) = ⟨α3(1-u^-4)⟩",
    ];
    ensure(text.lines().eq(expected), || format!("text:\n{text}"))?;
    Ok("4 generators match".into())
}

fn presentation() -> Outcome {
    let ring = KOrbRing::new(weights(&[1, 2, 4])).unwrap();
    let pres = ring.presentation();
    ensure(pres.ell == 4, || "ell".into())?;
    ensure(pres.relations_i.len() == 10, || {
        format!("{} product relations", pres.relations_i.len())
    })?;
    for r in &pres.relations_i {
        let expected = if r.left == 0 {
            (r.right, Vec::new())
        } else {
            let (target, f) = TABLE_124
                .iter()
                .find(|(st, _)| *st == (r.left, r.right))
                .map(|(_, v)| *v)
                .ok_or_else(|| format!("unexpected pair ({}, {})", r.left, r.right))?;
            (target, f.to_vec())
        };
        ensure((r.target, r.factor_weights.clone()) == expected, || {
            format!("relation {r}")
        })?;
    }
    let j: Vec<Vec<u64>> = pres.relations_j.iter().map(|k| k.factor_weights.clone()).collect();
    ensure(j == KERNELS_124.map(<[u64]>::to_vec), || format!("J = {j:?}"))?;
    let text = cli::cmd_present(&weights(&[1, 2, 4]), Format::Text).unwrap().body;
    ensure(text.lines().any(|l| l.trim() == "α0 - 1"), || "unit relation".into())?;
    for line in [
        "α1α1 - (1-u^-2)α2",
        "α1α2 - α3",
        "α1α3 - (1-u^-1)(1-u^-2)α0",
        "α2α2 - (1-u^-1)α0",
        "α2α3 - (1-u^-1)α1",
        "α3α3 - (1-u^-1)(1-u^-2)α2",
        "α0(1-u^-1)(1-u^-2)(1-u^-4)",
        "α1(1-u^-4)",
        "α2(1-u^-2)(1-u^-4)",
        "α3(1-u^-4)",
    ] {
        ensure(text.lines().any(|l| l.trim() == line), || format!("missing {line}"))?;
    }
    Ok("I (10 pairs), J (4 sectors) and α0 - 1 match".into())
}

fn torsion_sweep() -> Outcome {
    let start = Instant::now();
    let mut sectors = 0;
    for b in sweep() {
        let data = WpsData::new(weights(&b)).unwrap();
        let report = torsion_report(&data);
        sectors += report.sectors.len();
        let failure = report.failures().next().map(|f| format!("weights {b:?}: {f:?}"));
        if let Some(f) = failure {
            return Err(f);
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("{SWEEP_SIZE} weight vectors, {sectors} sectors, 0 failures in {elapsed:?}"))
}

fn ring_axioms() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0;
    for b in sweep() {
        let data = WpsData::new(weights(&b)).unwrap();
        if data.ell() > 60 {
            continue;
        }
        exhaustive += 1;
        if let Some(c) = exponent_checks(&data, 1, 0).into_iter().find(|c| !c.passed()) {
            return Err(format!("weights {b:?}: {} {:?}", c.name, c.counterexample));
        }
    }
    ensure(exhaustive > 0, || "no sweep vector has ell <= 60".into())?;
    let mut summaries = Vec::new();
    for (b, seed) in [(vec![1, 2, 4], 7), (vec![2, 3], 11)] {
        let report = KOrbRing::new(weights(&b)).unwrap().verify(500, seed);
        ensure(report.passed() && report.cocycle_exhaustive && report.trials >= 500, || {
            format!("{b:?}: {}", report.summary())
        })?;
        summaries.push(format!("{b:?}: {}", report.summary()));
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!(
        "exponent identities exhaustive on {exhaustive} sweep vectors; {} in {elapsed:?}",
        summaries.join("; ")
    ))
}

fn rank_oracle() -> Outcome {
    let mut sectors = 0;
    for b in sweep() {
        let ring = KOrbRing::new(weights(&b)).unwrap();
        let ell = brute_ell(&b);
        ensure(ring.ell() as u64 == ell, || format!("{b:?}: ell"))?;
        for (s, sector) in ring.sectors().iter().enumerate() {
            let rank = sector.modulus().degree();
            let expected = brute_rank(&b, ell, s as u64);
            ensure(rank == expected, || {
                format!("{b:?} sector {s}: rank {rank}, expected {expected}")
            })?;
            sectors += 1;
        }
    }
    let total = KOrbRing::new(weights(&[1, 2, 4])).unwrap().total_rank();
    ensure(total == 21, || format!("rank of (1,2,4) is {total}"))?;
    for len in 1..=6 {
        let total = KOrbRing::new(weights(&vec![1; len])).unwrap().total_rank();
        ensure(total == len, || format!("rank of {len} ones is {total}"))?;
    }
    Ok(format!("{sectors} sectors agree; total 21 for (1,2,4); n+1 for (1,...,1)"))
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let n = rng.gen_range(0..=8);
    LaurentPoly::from_terms((0..n).map(|_| (rng.gen_range(-20..=20i64), rng.gen_range(-50..=50i64))))
}

fn reduction() -> Outcome {
    let start = Instant::now();
    let ring = KOrbRing::new(weights(&[1, 2, 4])).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for sector in ring.sectors() {
        let g = sector.modulus();
        for _ in 0..1000 {
            let x = random_laurent(&mut rng);
            let r = sector.reduce(&x);
            let diff = &x - &r;
            let lift = diff.min_exponent().map_or(0, |e| (-e).max(0));
            let lifted = diff.shift(lift);
            let (q, rem) = divmod_monic(&lifted, g).map_err(|e| e.to_string())?;
            ensure(rem.is_zero() && &q * &g.to_laurent() == lifted, || {
                format!("sector {}: {x} - {r} is not in the ideal", sector.sector())
            })?;
            ensure(sector.reduce(&r) == r, || {
                format!("sector {}: reduce not idempotent on {x}", sector.sector())
            })?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(5))?;
    Ok(format!("4000 polynomials, witnesses verified in {elapsed:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 golden chart", golden_chart),
        ("AC2 golden table", golden_table),
        ("AC3 golden kernels", golden_kernels),
        ("AC4 presentation", presentation),
        ("AC5 torsion-freeness sweep", torsion_sweep),
        ("AC6 ring axioms", ring_axioms),
        ("AC7 rank oracle", rank_oracle),
        ("AC8 reduction correctness", reduction),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
