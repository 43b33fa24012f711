//! Acceptance gate: ten property checks at desk scale, one line each.
//! Run with `cargo test -p betti-bounds --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use betti_bounds::betti::BettiTable;
use betti_bounds::ek::{ek_betti, max_index_profile};
use betti_bounds::field::{PrimeField, CROSS_CHECK_PRIME, DEFAULT_PRIME};
use betti_bounds::ideal::{random_monomial_ideal, MonomialIdeal};
use betti_bounds::koszul::{multigraded_betti, BettiOptions};
use betti_bounds::segments::{lex_segment_ideal, rev_segment_ideal, SegmentSpec};
use betti_bounds::suites::{
    differential_laws_check, draw_linear, draw_monomial, draw_stable, draw_stable_single, gin_check, instance_seed,
    random_cycle, run_suite, witness_check, Suite, SweepConfig,
};
use betti_bounds::verify::{check_herzog_bounds, check_sandwich, exchange_walk};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240607;

struct Line {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn rng(criterion: usize, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(instance_seed(SEED + criterion as u64, index))
}

fn field(q: u64) -> PrimeField {
    PrimeField::new(q).unwrap()
}

fn koszul(ideal: &MonomialIdeal, q: u64) -> BettiTable {
    let opts = BettiOptions { max_generators: usize::MAX, ..BettiOptions::default() };
    multigraded_betti(ideal, field(q), &opts).unwrap().1
}

fn table(n: usize, e: &[(usize, usize, u64)]) -> BettiTable {
    BettiTable::from_entries(n, e.iter().map(|&(i, j, b)| ((i, j), b)))
}

fn stable_corpus() -> Vec<MonomialIdeal> {
    let cfg = SweepConfig::default();
    (0..200).map(|i| draw_stable(&mut rng(1, i), &cfg).unwrap()).collect()
}

fn c1_ek_vs_koszul(corpus: &[MonomialIdeal]) -> Line {
    let start = Instant::now();
    let bounded = corpus.iter().all(|i| i.nvars() <= 5 && i.num_generators() <= 8)
        && corpus.iter().all(|i| i.generators().iter().all(|g| g.degree() <= 4));
    let mismatches = corpus.iter().filter(|i| ek_betti(i).unwrap() != koszul(i, DEFAULT_PRIME)).count();
    let elapsed = start.elapsed();
    Line {
        id: 1,
        name: "EK table equals Koszul table on random stable ideals",
        pass: bounded && corpus.len() >= 200 && mismatches == 0 && elapsed < Duration::from_secs(60),
        detail: format!("{} ideals, {mismatches} mismatches, {:.2}s", corpus.len(), elapsed.as_secs_f64()),
    }
}

fn c2_fixed_tables() -> Line {
    let spec = SegmentSpec::new(3, 2, 3).unwrap();
    let rev = rev_segment_ideal(&spec).unwrap();
    let lex = lex_segment_ideal(&spec).unwrap();
    let want_rev = table(3, &[(0, 2, 3), (1, 3, 2)]);
    let want_lex = table(3, &[(0, 2, 3), (1, 3, 3), (2, 4, 1)]);
    let ok = ek_betti(&rev).unwrap() == want_rev
        && koszul(&rev, DEFAULT_PRIME) == want_rev
        && ek_betti(&lex).unwrap() == want_lex
        && koszul(&lex, DEFAULT_PRIME) == want_lex;
    Line { id: 2, name: "segment tables for d=2, k=3, n=3 from both engines", pass: ok, detail: format!("I(2,3) {rev}, J(2,3) {lex}") }
}

fn c3_sandwich() -> Line {
    let mut failures = 0;
    let mut converse_failures = 0;
    let (mut at_lower, mut at_upper) = (0, 0);
    for idx in 0..100 {
        let mut r = rng(3, idx);
        let n = r.gen_range(2..=5);
        let ideal = draw_stable_single(&mut r, n, 4, 8).unwrap();
        let s = check_sandwich(&ideal).unwrap();
        failures += usize::from(!s.pass);
        let spec = SegmentSpec::new(n, s.d as u32, s.k).unwrap();
        let lower_profile = max_index_profile(&rev_segment_ideal(&spec).unwrap());
        let upper_profile = max_index_profile(&lex_segment_ideal(&spec).unwrap());
        let profile = max_index_profile(&ideal);
        converse_failures += usize::from(s.equals_lower != (profile == lower_profile));
        converse_failures += usize::from(s.equals_upper != (profile == upper_profile));
        at_lower += usize::from(s.equals_lower);
        at_upper += usize::from(s.equals_upper);
    }
    let mut spot_failures = 0;
    for (n, d, k) in [(3, 2, 3), (3, 2, 4), (4, 2, 5), (3, 3, 6), (4, 3, 9), (5, 2, 7), (2, 4, 3)] {
        let spec = SegmentSpec::new(n, d, k).unwrap();
        let lo = check_sandwich(&rev_segment_ideal(&spec).unwrap()).unwrap();
        let hi = check_sandwich(&lex_segment_ideal(&spec).unwrap()).unwrap();
        spot_failures += usize::from(!(lo.pass && lo.equals_lower && hi.pass && hi.equals_upper));
    }
    Line {
        id: 3,
        name: "revlex segment <= ideal <= lex segment, with equality at the extremes",
        pass: failures == 0 && converse_failures == 0 && spot_failures == 0,
        detail: format!(
            "100 ideals, {failures} failures; {at_lower} meet the lower table, {at_upper} the upper; {converse_failures} equality mismatches; 7 extremal spot checks, {spot_failures} failures"
        ),
    }
}

fn c4_walks() -> Line {
    let mut failures = 0;
    let mut steps = 0;
    for idx in 0..50 {
        let mut r = rng(4, idx);
        let n = r.gen_range(2..=5);
        let ideal = draw_stable_single(&mut r, n, 4, 8).unwrap();
        let w = exchange_walk(&ideal).unwrap();
        steps += w.steps.len();
        failures += usize::from(!w.pass);
    }
    Line {
        id: 4,
        name: "generator-swap walk to the revlex segment never raises an entry",
        pass: failures == 0,
        detail: format!("50 walks, {steps} steps, {failures} failures"),
    }
}

fn c5_herzog() -> Line {
    let cfg = SweepConfig::default();
    let mut failures = 0;
    let (mut non_stable, mut strands) = (0, 0);
    for idx in 0..200 {
        let ideal = draw_monomial(&mut rng(5, idx), &cfg).unwrap();
        non_stable += usize::from(!ideal.is_stable());
        let r = check_herzog_bounds(&koszul(&ideal, DEFAULT_PRIME)).unwrap();
        strands += r.strands.iter().filter(|s| !s.vacuous).count();
        failures += usize::from(!r.pass);
    }
    Line {
        id: 5,
        name: "linear strand lower bounds on Koszul tables of monomial ideals",
        pass: failures == 0 && non_stable > 0 && non_stable < 200,
        detail: format!("200 ideals ({non_stable} not stable), {strands} strands checked, {failures} failures"),
    }
}

fn c6_differential() -> Line {
    let f = field(DEFAULT_PRIME);
    let mut fails = [0usize; 4];
    for idx in 0..1000 {
        let mut r = rng(6, idx);
        let n = r.gen_range(2..=5);
        let res = differential_laws_check(&mut r, n, f).unwrap();
        for (k, ok) in res.iter().take(3).enumerate() {
            fails[k] += usize::from(!ok);
        }
    }
    let mut cycles = 0;
    let mut idx = 0;
    while cycles < 1000 {
        let mut r = rng(60, idx);
        idx += 1;
        let n = r.gen_range(2..=5);
        let k = r.gen_range(1..=5);
        let Ok(ideal) = random_monomial_ideal(n, 3, k, r.gen()) else { continue };
        let Some(z) = random_cycle(&mut r, &ideal, f, 1).unwrap() else { continue };
        cycles += 1;
        let a = z.multidegree().unwrap();
        let ok = (0..n).all(|k| {
            let y = z.partial(k);
            y.is_cycle() && (y.is_zero() || y.multidegree() == a.div_var(k))
        });
        fails[3] += usize::from(!ok);
    }
    Line {
        id: 6,
        name: "Koszul differential identities",
        pass: fails.iter().all(|&x| x == 0),
        detail: format!(
            "1000 each: d^2=0 {}, anticommutation {}, Leibniz {}, cycle contraction {} failures",
            fails[0], fails[1], fails[2], fails[3]
        ),
    }
}

fn c7_witness() -> Line {
    let f = field(DEFAULT_PRIME);
    let (mut checked, mut failures, mut max_p) = (0, 0, 0);
    let mut idx = 0;
    while checked < 100 {
        let mut r = rng(7, idx);
        idx += 1;
        let n = r.gen_range(2..=5);
        let d = r.gen_range(1..=3);
        let k = r.gen_range(2..=6);
        let Ok(ideal) = random_monomial_ideal(n, d, k, r.gen()) else { continue };
        let Some(z) = random_cycle(&mut r, &ideal, f, 1).unwrap() else { continue };
        checked += 1;
        match witness_check(&z) {
            Ok(c) => {
                max_p = max_p.max(c.p);
                failures += usize::from(!c.pass());
            }
            Err(_) => failures += 1,
        }
    }
    Line {
        id: 7,
        name: "witness chains with increasing initial terms and full rank",
        pass: failures == 0,
        detail: format!("{checked} cycles up to homological degree {max_p}, {failures} failures"),
    }
}

fn c8_wsets() -> Line {
    let r = run_suite(Suite::Wsets, &SweepConfig { count: 500, seed: SEED, ..SweepConfig::default() }).unwrap();
    Line {
        id: 8,
        name: "W-set families reach the binomial sizes",
        pass: r.pass() && r.count == 500,
        detail: format!("{}/{} chooser instances", r.passed, r.count),
    }
}

fn c9_gin() -> Line {
    let f = field(DEFAULT_PRIME);
    let start = Instant::now();
    let mut failures = 0;
    for idx in 0..30 {
        let mut r = rng(9, idx);
        let ideal = draw_linear(&mut r, f).unwrap();
        match gin_check(&ideal, f, r.gen()) {
            Ok(c) => failures += usize::from(!c.pass()),
            Err(_) => failures += 1,
        }
    }
    let elapsed = start.elapsed();
    Line {
        id: 9,
        name: "probabilistic generic initial ideals are stable with the same table",
        pass: failures == 0 && elapsed < Duration::from_secs(120),
        detail: format!("30 ideals, 3 trials each over q={DEFAULT_PRIME}, {failures} failures, {:.2}s", elapsed.as_secs_f64()),
    }
}

fn c10_characteristic(corpus: &[MonomialIdeal]) -> Line {
    let mismatches = corpus.iter().filter(|i| koszul(i, CROSS_CHECK_PRIME) != koszul(i, DEFAULT_PRIME)).count();
    Line {
        id: 10,
        name: "Koszul tables agree over q=2 and q=32003",
        pass: mismatches == 0,
        detail: format!("{} ideals, {mismatches} mismatches", corpus.len()),
    }
}

fn main() -> ExitCode {
    let corpus = stable_corpus();
    let lines = [
        c1_ek_vs_koszul(&corpus),
        c2_fixed_tables(),
        c3_sandwich(),
        c4_walks(),
        c5_herzog(),
        c6_differential(),
        c7_witness(),
        c8_wsets(),
        c9_gin(),
        c10_characteristic(&corpus),
    ];
    for l in &lines {
        println!("criterion {:>2} {}: {} ({})", l.id, if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("acceptance: {passed}/{} criteria passed", lines.len());
    if passed == lines.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
