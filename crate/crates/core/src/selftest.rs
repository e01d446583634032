//! Randomized oracle-equivalence checks behind the `selftest` command.
//!
//! Case `k` of a run with seed `s` draws its text and queries from seed
//! `s + k`, so any failure is replayed by a one-iteration run with that seed.
//!
//! Rank is checked through a backward search driven by the rank under test.
//! [`Fault::RankOffByOne`] swaps in a rank that misses the symbol at row `i`,
//! which the harness must catch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdawgindex::CdawgRlbwtIndex;
use crate::cdawgst::CdawgSuffixTree;
use crate::corpus::{random_pattern, random_text};
use crate::interval::Interval;
use crate::lzindex::LzRlbwtIndex;
use crate::measures::measure;
use crate::oracles::{naive_matching_statistics, naive_measures, naive_occurrences, OracleSuffixTree, SuffixArrayBundle};
use crate::rlbwt::RunLengthBwt;
use crate::textio::{Symbol, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    RankOffByOne,
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub max_n: usize,
    pub sigma: usize,
    pub seed: u64,
    pub iterations: usize,
    pub patterns_per_case: usize,
    pub fault: Option<Fault>,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            max_n: 128,
            sigma: 4,
            seed: 1,
            iterations: 100,
            patterns_per_case: 8,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub case_seed: u64,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<CaseFailure>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn rank_under_test(rb: &RunLengthBwt, c: Symbol, i: usize, fault: Option<Fault>) -> usize {
    match fault {
        Some(Fault::RankOffByOne) => rb.rank(c, i.saturating_sub(1)),
        None => rb.rank(c, i),
    }
}

fn count_under_test(rb: &RunLengthBwt, p: &[Symbol], fault: Option<Fault>) -> usize {
    let mut iv = rb.full();
    for &c in p.iter().rev() {
        if c as usize > rb.sigma() {
            return 0;
        }
        let base = rb.c_array(c);
        iv = Interval::new(
            base + rank_under_test(rb, c, iv.sp - 1, fault) + 1,
            base + rank_under_test(rb, c, iv.ep, fault),
        );
        if iv.is_empty() {
            return 0;
        }
    }
    iv.width()
}

struct Case {
    seed: u64,
    checks: usize,
    failures: Vec<CaseFailure>,
}

impl Case {
    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(CaseFailure {
                case_seed: self.seed,
                check: name,
                detail: detail(),
            });
        }
    }
}

pub fn run_case(cfg: &SelftestConfig, case_seed: u64) -> (usize, Vec<CaseFailure>) {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let sigma = rng.gen_range(1..=cfg.sigma.max(1));
    let t = random_text(&mut rng, cfg.max_n.max(2), sigma);
    let mut case = Case {
        seed: case_seed,
        checks: 0,
        failures: Vec::new(),
    };
    let text = String::from_utf8_lossy(&t.decode()).into_owned();

    let lz = LzRlbwtIndex::build(&t);
    let cd = CdawgRlbwtIndex::build(&t);
    let st = CdawgSuffixTree::build(&t);
    let rb = lz.rlbwt();

    // rank against a plain prefix count at every row
    let plain: Vec<Symbol> = (1..=rb.len()).map(|i| rb.char_at(i)).collect();
    let mut counts = vec![0usize; rb.sigma() + 1];
    let mut rank_ok = true;
    for i in 1..=rb.len() {
        counts[plain[i - 1] as usize] += 1;
        for c in 0..=rb.sigma() as Symbol {
            rank_ok &= rank_under_test(rb, c, i, cfg.fault) == counts[c as usize];
        }
    }
    case.check("rank", rank_ok, || format!("text {text:?}"));

    for _ in 0..cfg.patterns_per_case {
        let bytes = random_pattern(&mut rng, &t, 12);
        let p = t.encode_pattern(&bytes).expect("patterns use the text alphabet");
        let want = naive_occurrences(&t, &p);
        let shown = String::from_utf8_lossy(&bytes).into_owned();
        let got = count_under_test(rb, &p, cfg.fault);
        case.check("count", got == want.len(), || {
            format!("text {text:?} pattern {shown:?}: got {got}, want {}", want.len())
        });
        let got = lz.locate(&p).all();
        case.check("locate lz-rlbwt", got == want, || {
            format!("text {text:?} pattern {shown:?}: got {got:?}, want {want:?}")
        });
        let got = cd.locate(&p);
        case.check("locate cdawg", got == want, || {
            format!("text {text:?} pattern {shown:?}: got {got:?}, want {want:?}")
        });
        let q: Vec<Symbol> = (0..rng.gen_range(1..=24)).map(|_| rng.gen_range(1..=t.sigma() as Symbol)).collect();
        let got = st.matching_statistics(&q);
        let want = naive_matching_statistics(&t, &q);
        case.check("matching statistics", got == want, || {
            format!("text {text:?} query {q:?}: got {got:?}, want {want:?}")
        });
    }

    let visited = st.traverse().count();
    let nodes = OracleSuffixTree::build(&t, &SuffixArrayBundle::build(&t)).len();
    case.check("traversal", visited == nodes, || {
        format!("text {text:?}: visited {visited}, tree has {nodes}")
    });
    if t.len() <= 256 {
        let got = measure(&t);
        let want = naive_measures(&t);
        case.check("measures", got == want, || format!("text {text:?}: got {got:?}, want {want:?}"));
    }
    (case.checks, case.failures)
}

pub fn run(cfg: &SelftestConfig) -> SelftestReport {
    let mut report = SelftestReport::default();
    for k in 0..cfg.iterations {
        let (checks, failures) = run_case(cfg, cfg.seed.wrapping_add(k as u64));
        report.cases += 1;
        report.checks += checks;
        report.failures.extend(failures);
    }
    report
}

/// Text of the case drawn from `case_seed`, for reproducing failures.
pub fn case_text(cfg: &SelftestConfig, case_seed: u64) -> Text {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let sigma = rng.gen_range(1..=cfg.sigma.max(1));
    random_text(&mut rng, cfg.max_n.max(2), sigma)
}
