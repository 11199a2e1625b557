//! The three relations of the 2-fold symbol: right-slot additivity,
//! symmetry, and the alternating rule. Each is checked formally (normal
//! form) and under random specializations with exact finite-field
//! Witt-index agreement.

use pflink::field2::FieldContext;
use pflink::oracle::specialization_witt_evidence;
use pflink::symbols::{QPfisterSymbol, SymbolSum};
use pflink::FieldElement;

use super::Params;
use crate::report::Report;

pub fn run(params: &Params) -> Report {
    let mut report = Report::new("rels");
    params.record(&mut report);
    let ctx = match FieldContext::rational(params.field_k, &["a", "b", "bp"]) {
        Ok(c) => c,
        Err(e) => {
            report.computed(false, format!("field setup failed: {e}"));
            return report;
        }
    };
    let a = FieldElement::var_named(&ctx, "a").unwrap();
    let b = FieldElement::var_named(&ctx, "b").unwrap();
    let bp = FieldElement::var_named(&ctx, "bp").unwrap();

    let identities: Vec<(String, Vec<QPfisterSymbol>)> = vec![
        (
            "((a,a)) = 0 (alternating)".into(),
            vec![QPfisterSymbol::new(vec![a.clone(), a.clone()])],
        ),
        (
            "((a,b)) + ((a,b')) + ((a,b+b')) = 0 (right additivity)".into(),
            vec![
                QPfisterSymbol::new(vec![a.clone(), b.clone()]),
                QPfisterSymbol::new(vec![a.clone(), bp.clone()]),
                QPfisterSymbol::new(vec![a.clone(), b.add(&bp)]),
            ],
        ),
        (
            "((a,b)) + ((b,a)) = 0 (symmetry)".into(),
            vec![
                QPfisterSymbol::new(vec![a.clone(), b.clone()]),
                QPfisterSymbol::new(vec![b.clone(), a.clone()]),
            ],
        ),
    ];

    for (claim, symbols) in identities {
        let sum = SymbolSum::from_symbols(&ctx, symbols).expect("common fold");
        let formal = sum.is_formally_hyperbolic();
        report.computed(formal, format!("{claim}: normal form is 0"));
        match specialization_witt_evidence(&sum, params.trials, params.seed) {
            Ok(ev) => report.evidence(
                ev.trials >= params.trials.min(200) || ev.exhaustive,
                format!(
                    "{claim}: {} specializations with full Witt index, {} poles skipped",
                    ev.trials, ev.poles_skipped
                ),
                None,
            ),
            Err(refuted) => report.evidence(false, format!("{claim}: REFUTED: {refuted}"), None),
        }
    }

    // The lone generic symbol stays unproven (the calculus is sound, not
    // complete, and a finite specialization can never separate it).
    let lone = SymbolSum::singleton(QPfisterSymbol::new(vec![a, b]));
    report.computed(
        !lone.is_formally_hyperbolic(),
        "((a,b)) alone is not provably zero (stays unproven)",
    );
    report
}
