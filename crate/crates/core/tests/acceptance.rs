//! One test per acceptance criterion. Tolerances and budgets are fixed
//! here; verdicts are compared exactly.

use std::time::{Duration, Instant};

use fuzzy2d_core::formula::{family_f2_odot_fn, family_fk_odot_fk, family_fn, nnf, parse};
use fuzzy2d_core::oracle::{gen_corpus, godel_validity_oracle, luk_refuter, Corpus};
use fuzzy2d_core::semantics::{
    dual_valuation, normalize_filter, q, sample_falsify, SampleConfig, TruthPair, Q,
};
use fuzzy2d_core::{
    eval, is_designated, prove_entailment, prove_valid, Filter, Formula, LogicId, Mode, ProverConfig, Valuation,
    Verdict,
};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LA: LogicId = LogicId::LUK_ARROW;
const LW: LogicId = LogicId::LUK_WARROW;
const GA: LogicId = LogicId::GODEL_ARROW;
const GW: LogicId = LogicId::GODEL_WARROW;

const SMALL_SQUARES_BUDGET: Duration = Duration::from_secs(10);
const BIG_SQUARES_BUDGET: Duration = Duration::from_secs(60);
const CONSERVATIVE_BUDGET: Duration = Duration::from_secs(30);
const QUERY_BUDGET: Duration = Duration::from_secs(10);
const SAMPLE_TRIALS: usize = 10_000;
const CORPUS_SEED: u64 = 20_240_601;

fn cfg() -> ProverConfig {
    ProverConfig::default()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// An `Invalid` verdict's countermodel must fail designation exactly and
/// reproduce the reported value.
fn assert_countermodel(f: &Formula, d: &Filter, logic: LogicId, v: &Verdict) {
    if let Verdict::Invalid { countermodel, value, .. } = v {
        let again = eval(f, countermodel, logic).unwrap();
        assert_eq!(&again, value, "{f}: reported value differs under {countermodel}");
        assert!(!is_designated(&again, d), "{f} at {d}: countermodel {countermodel} designates");
    }
}

fn corpus(logic: LogicId, count: usize) -> Vec<Formula> {
    gen_corpus(CORPUS_SEED, count, 4, 3, logic).formulas
}

fn random_valuation(rng: &mut ChaCha8Rng, f: &Formula) -> Valuation {
    f.atoms()
        .into_iter()
        .map(|a| {
            let den = rng.gen_range(1..=64i64);
            let pair = TruthPair::from_ints(rng.gen_range(0..=den), den, rng.gen_range(0..=den), den);
            (a, pair)
        })
        .collect()
}

#[test]
fn criterion_01_small_squares_separate_filters() {
    for k in 2..=4i64 {
        let d = Filter::from_ints(k - 1, k, 1, k);
        for n in 2..=4usize {
            let f = family_fn(n);
            let (v, took) = timed(|| prove_valid(&f, &d, LA, &cfg()).unwrap());
            assert_eq!(v.is_valid(), n as i64 >= k, "F_{n} at {d}");
            assert!(took < SMALL_SQUARES_BUDGET, "F_{n} at {d} took {took:?}");
            assert_countermodel(&f, &d, LA, &v);
        }
    }
}

#[test]
fn criterion_02_big_squares() {
    let par = ProverConfig {
        parallel: true,
        ..cfg()
    };
    for n in 3..=4i64 {
        let d = Filter::from_ints(n - 2, 2 * n, n + 2, 2 * n);
        for k in 3..=4usize {
            let f = family_f2_odot_fn(k);
            let (v, took) = timed(|| prove_valid(&f, &d, LA, &par).unwrap());
            assert_eq!(v.is_valid(), k as i64 >= n, "F_2 * F_{k} at {d}");
            assert!(took < BIG_SQUARES_BUDGET, "F_2 * F_{k} at {d} took {took:?}");
            assert_countermodel(&f, &d, LA, &v);
        }
    }
}

#[test]
fn criterion_03_modus_ponens_fails() {
    let d = Filter::from_ints(2, 3, 1, 3);
    let f3 = family_fn(3);
    assert!(prove_valid(&f3, &d, LA, &cfg()).unwrap().is_valid());
    let sq = family_fk_odot_fk(3);
    let v = prove_valid(&sq, &d, LA, &cfg()).unwrap();
    assert!(!v.is_valid());
    assert_countermodel(&sq, &d, LA, &v);
    let w = luk_refuter(&sq, &d, LA, 3).unwrap().expect("the thirds grid refutes F_3 * F_3");
    let value = eval(&sq, &w, LA).unwrap();
    assert_eq!((value.pos, value.neg), (q(1, 3), q(2, 3)));
}

#[test]
fn criterion_04_paraconsistency() {
    for (text, logic) in [
        ("(p & !p) -> q", LA),
        ("(p & !p) ~> q", LW),
        ("(p & !p) -> q", GA),
        ("(p & !p) ~> q", GW),
    ] {
        let f = parse(text, logic).unwrap();
        let d = Filter::default_for(logic);
        let v = prove_valid(&f, &d, logic, &cfg()).unwrap();
        assert!(!v.is_valid(), "{text} in {logic}");
        assert_countermodel(&f, &d, logic, &v);
    }
    let d = Filter::positive();
    for logic in [LA, GA, GW] {
        let gamma = [parse("p", logic).unwrap(), parse("!p", logic).unwrap()];
        let q_ = parse("q", logic).unwrap();
        let v = prove_entailment(&gamma, &q_, &d, logic, &cfg()).unwrap();
        let Verdict::Invalid { countermodel, .. } = &v else {
            panic!("p, !p entails q in {logic}");
        };
        for g in &gamma {
            assert!(is_designated(&eval(g, countermodel, logic).unwrap(), &d));
        }
        assert!(!is_designated(&eval(&q_, countermodel, logic).unwrap(), &d));
    }
}

#[test]
fn criterion_05_conservative_extension() {
    let luk_valid = [
        "p -> (q -> p)",
        "(p -> q) -> ((q -> r) -> (p -> r))",
        "((p -> q) -> q) -> ((q -> p) -> p)",
        "((p -> 0) -> (q -> 0)) -> (q -> p)",
        "(p & q) -> p",
        "p -> (p | q)",
        "(p -> q) | (q -> p)",
        "(p -> (q -> r)) -> (q -> (p -> r))",
        "((p -> 0) -> 0) -> p",
        "(p | q) -> ((p -> q) -> q)",
        "0 -> p",
        "((p -> q) -> r) -> (((q -> p) -> r) -> r)",
    ];
    let godel_valid = [
        "p -> p",
        "p -> (q -> p)",
        "(p -> (q -> r)) -> ((p -> q) -> (p -> r))",
        "(p & q) -> p",
        "p -> (p | q)",
        "(p -> q) | (q -> p)",
        "(p & (p -> q)) -> q",
        "((p -> r) & (q -> r)) -> ((p | q) -> r)",
        "0 -> p",
        "(p -> (p -> q)) -> (p -> q)",
        "(p -> 0) | ((p -> 0) -> 0)",
        "(p -> q) -> ((q -> r) -> (p -> r))",
    ];
    let invalid = [
        ("p | (p -> 0)", LA),
        ("(p -> (p -> q)) -> (p -> q)", LA),
        ("(p & (p -> q)) -> q", LA),
        ("p | (p -> 0)", GA),
        ("((p -> 0) -> 0) -> p", GA),
        ("((p -> q) -> q) -> ((q -> p) -> p)", GA),
    ];
    let d = Filter::exact();
    let ((), took) = timed(|| {
        for text in luk_valid {
            let f = parse(text, LA).unwrap();
            assert!(prove_valid(&f, &d, LA, &cfg()).unwrap().is_valid(), "{text} in {LA}");
        }
        for text in godel_valid {
            let f = parse(text, GA).unwrap();
            assert!(prove_valid(&f, &d, GA, &cfg()).unwrap().is_valid(), "{text} in {GA}");
        }
        for (text, logic) in invalid {
            let f = parse(text, logic).unwrap();
            let v = prove_valid(&f, &d, logic, &cfg()).unwrap();
            assert!(!v.is_valid(), "{text} in {logic}");
            assert_countermodel(&f, &d, logic, &v);
        }
    });
    assert!(took < CONSERVATIVE_BUDGET, "took {took:?}");
}

#[test]
fn criterion_06_godel_filter_independence() {
    let filters = [Filter::exact(), Filter::positive(), Filter::from_ints(1, 2, 1, 2)];
    let mut disagreements = Vec::new();
    for f in corpus(GA, 50) {
        let oracle = godel_validity_oracle(&f, GA).unwrap();
        for d in &filters {
            let v = prove_valid(&f, d, GA, &cfg()).unwrap();
            assert_countermodel(&f, d, GA, &v);
            if v.is_valid() != oracle {
                disagreements.push(format!("{f} at {d}: tableau {} oracle {oracle}", v.is_valid()));
            }
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:#?}");
}

#[test]
fn criterion_07_soundness_and_completeness() {
    let mut violations = Vec::new();
    for logic in LogicId::ALL {
        let d = Filter::default_for(logic);
        for (i, f) in corpus(logic, 100).into_iter().enumerate() {
            let v = prove_valid(&f, &d, logic, &cfg()).unwrap();
            match &v {
                Verdict::Valid { .. } => {
                    let sample = SampleConfig {
                        trials: SAMPLE_TRIALS,
                        seed: i as u64,
                    };
                    if let Some(w) = sample_falsify(&f, &d, logic, sample).unwrap() {
                        violations.push(format!("{logic} {f}: valid but falsified by {w}"));
                    }
                }
                Verdict::Invalid { countermodel, .. } => {
                    if is_designated(&eval(&f, countermodel, logic).unwrap(), &d) {
                        violations.push(format!("{logic} {f}: countermodel {countermodel} designates"));
                    }
                }
            }
        }
    }
    assert!(violations.is_empty(), "{violations:#?}");
}

#[test]
fn criterion_08_filter_normalization() {
    let filters = [
        Filter::positive(),
        Filter::from_ints(3, 4, 1, 2),
        Filter::from_ints(1, 4, 1, 4),
    ];
    let mut disagreements = Vec::new();
    for f in corpus(LA, 25) {
        for d in &filters {
            let n = normalize_filter(d);
            let a = prove_valid(&f, d, LA, &cfg()).unwrap();
            let b = prove_valid(&f, &n, LA, &cfg()).unwrap();
            assert_countermodel(&f, d, LA, &a);
            if a.is_valid() != b.is_valid() {
                disagreements.push(format!("{f}: {d} gives {}, {n} gives {}", a.is_valid(), b.is_valid()));
            }
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:#?}");
}

#[test]
fn criterion_09_branching_and_linear_agree() {
    let linear = ProverConfig {
        mode: Mode::Linear,
        ..cfg()
    };
    let mut disagreements = Vec::new();
    for logic in [LA, LW] {
        let d = Filter::default_for(logic);
        for f in corpus(logic, 100) {
            let a = prove_valid(&f, &d, logic, &cfg()).unwrap();
            let b = prove_valid(&f, &d, logic, &linear).unwrap();
            assert_countermodel(&f, &d, logic, &b);
            if a.is_valid() != b.is_valid() {
                disagreements.push(format!("{logic} {f}: branching {} linear {}", a.is_valid(), b.is_valid()));
            }
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:#?}");
}

#[test]
fn criterion_10_nnf_preserves_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    for logic in [LA, GA] {
        for f in corpus(logic, 50) {
            let g = nnf(&f, logic).unwrap();
            for _ in 0..100 {
                let v = random_valuation(&mut rng, &f);
                assert_eq!(eval(&g, &v, logic).unwrap(), eval(&f, &v, logic).unwrap(), "{f} vs {g} under {v}");
            }
        }
    }
}

#[test]
fn criterion_11_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 1);
    for f in corpus(GA, 100) {
        for _ in 0..100 {
            let v = random_valuation(&mut rng, &f);
            let t = eval(&f, &v, GA).unwrap();
            let dual = eval(&f, &dual_valuation(&v), GA).unwrap();
            let expected = TruthPair {
                pos: Q::one() - &t.neg,
                neg: Q::one() - &t.pos,
            };
            assert_eq!(dual, expected, "{f} under {v}");
        }
    }
}

#[test]
fn criterion_12_runtime_budget() {
    let mut slow = Vec::new();
    let mut checked = 0;
    for logic in LogicId::ALL {
        let d = Filter::default_for(logic);
        let text = gen_corpus(CORPUS_SEED, 100, 4, 3, logic).to_jsonl();
        for (logic, f) in Corpus::read_jsonl(&text).unwrap() {
            if f.connective_count() > 12 {
                continue;
            }
            checked += 1;
            let (_, took) = timed(|| prove_valid(&f, &d, logic, &cfg()).unwrap());
            if took >= QUERY_BUDGET {
                slow.push(format!("{logic} {f}: {took:?}"));
            }
        }
    }
    assert!(checked >= 100, "only {checked} queries within the connective bound");
    assert!(slow.is_empty(), "{slow:#?}");
}
