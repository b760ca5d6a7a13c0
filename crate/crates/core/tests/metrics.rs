mod common;

use common::*;
use proptest::prelude::*;
use session_core::evaluator::{
    compute_metrics, render_json, render_tsv, report_from_predictions, AblationRow, Prediction, Rational,
};
use session_core::{Mode, Trinary};

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn matches_brute_force(p in pairs()) {
        check_metrics(&p).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn confusion_rows_and_columns(p in pairs()) {
        let r = compute_metrics(&p).unwrap();
        prop_assert_eq!(r.confusion.total(), p.len() as u64);
        for c in Trinary::ALL {
            let (gold, predicted, correct) = brute_counts(&p, c);
            prop_assert_eq!(r.confusion.gold(c), gold);
            prop_assert_eq!(r.confusion.predicted(c), predicted);
            prop_assert_eq!(r.confusion.correct(c), correct);
        }
    }

    #[test]
    fn json_agrees_with_tsv(p in pairs()) {
        let rows = vec![AblationRow { mode: Mode::Full, report: compute_metrics(&p).unwrap() }];
        let json = render_json(&rows);
        let tsv = render_tsv(&rows);
        let cells: Vec<&str> = tsv.lines().nth(1).unwrap().split('\t').collect();
        let report = &json["reports"][0];
        prop_assert_eq!(cells[2].parse::<f64>().unwrap(), report["overall_accuracy"].as_f64().unwrap());
        for (k, name) in ["positive", "neutral", "negative"].iter().enumerate() {
            let class = &report["classes"][name];
            for (j, field) in ["precision", "recall", "f_measure"].iter().enumerate() {
                let cell = cells[3 + 3 * k + j];
                match class[field].as_f64() {
                    Some(v) if !class["absent"].as_bool().unwrap() => prop_assert_eq!(cell.parse::<f64>().unwrap(), v),
                    _ => prop_assert_eq!(cell, "---"),
                }
            }
        }
    }
}

#[test]
fn sign_sum_is_reported_separately() {
    let pred = |gold, predicted, sign_sum| Prediction {
        id: String::new(),
        gold,
        predicted,
        sign_sum,
        rho: 1,
        eta: -1,
    };
    let preds = [
        pred(Trinary::Positive, Trinary::Positive, Trinary::Positive),
        pred(Trinary::Negative, Trinary::Neutral, Trinary::Negative),
    ];
    let r = report_from_predictions(&preds).unwrap();
    assert_eq!(r.overall_accuracy, Rational::new(1, 2));
    assert_eq!(r.sign_sum_accuracy, Some(Rational::from_integer(1)));
}

#[test]
fn all_neutral_gold_has_absent_polar_classes() {
    let r = compute_metrics(&[(Trinary::Neutral, Trinary::Neutral)]).unwrap();
    assert!(r.class(Trinary::Positive).absent());
    assert!(r.class(Trinary::Negative).absent());
    assert!(!r.class(Trinary::Neutral).absent());
    assert_eq!(r.class(Trinary::Neutral).f_measure, Rational::from_integer(1));
}
