//! JSON export of weight diagrams.
//!
//! The document shape (field order is fixed; scalars appear as exact
//! rational strings):
//!
//! ```json
//! {
//!   "family": "TwistedB_q",
//!   "lambda": "1/2",
//!   "c": "1",
//!   "x": "1/3",
//!   "window": { "i_min": -4, "i_max": 4 },
//!   "weights": [ { "weight": "1/6", "dim": 2, "complete": true }, … ],
//!   "axioms": { "pass": true, "violations": 0 }
//! }
//! ```
//!
//! `weights` lists the strata visible in the window in descending weight
//! order.  `axioms` is present only when the caller asked for the
//! commutator check to be included.  For a nested generic twist, `family`,
//! `lambda`, and `c` describe the root untwisted family and `x` is the
//! outermost twist parameter.

use serde::Serialize;

use crate::analysis::{check_axioms, weight_report, WeightEntry};
use crate::error::Result;
use crate::module::{Module, ModuleSpec, Window};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize)]
pub struct WeightDiagram {
    pub family: String,
    pub lambda: Scalar,
    pub c: Scalar,
    pub x: Scalar,
    pub window: Window,
    pub weights: Vec<WeightEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axioms: Option<AxiomSummary>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AxiomSummary {
    pub pass: bool,
    pub violations: usize,
}

/// Build the weight diagram of a module over a window, optionally running
/// and embedding the commutator check.
pub fn weight_diagram(
    spec: &ModuleSpec,
    window: Window,
    include_axioms: bool,
) -> Result<WeightDiagram> {
    let report = weight_report(spec, window);
    let axioms = if include_axioms {
        let module = Module::new(spec.clone());
        let axiom_report = check_axioms(&module, window)?;
        Some(AxiomSummary {
            pass: axiom_report.pass(),
            violations: axiom_report.violations.len(),
        })
    } else {
        None
    };
    Ok(WeightDiagram {
        family: report.module.family,
        lambda: report.module.lambda,
        c: report.module.c,
        x: report.module.x,
        window,
        weights: report.entries,
        axioms,
    })
}

/// Serialize a diagram as pretty-printed JSON (two-space indent, fixed
/// field order, trailing newline omitted).
pub fn to_json(diagram: &WeightDiagram) -> String {
    serde_json::to_string_pretty(diagram).expect("diagram serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn diagram_contains_exact_scalar_strings() {
        let spec = ModuleSpec::twisted_bq(s(1, 2), s(1, 1), s(1, 3)).unwrap();
        let diagram = weight_diagram(&spec, Window::new(-4, 4), true).unwrap();
        let json = to_json(&diagram);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["family"], "TwistedB_q");
        assert_eq!(value["lambda"], "1/2");
        assert_eq!(value["c"], "1");
        assert_eq!(value["x"], "1/3");
        assert_eq!(value["window"]["i_min"], -4);
        assert_eq!(value["window"]["i_max"], 4);
        assert_eq!(value["axioms"]["pass"], true);
        assert_eq!(value["axioms"]["violations"], 0);
        let weights = value["weights"].as_array().unwrap();
        assert!(!weights.is_empty());
        // Highest visible weight: λ − x − i_min = 1/2 − 1/3 + 4 = 25/6.
        assert_eq!(weights[0]["weight"], "25/6");
        assert_eq!(weights[0]["dim"], 2);
    }

    #[test]
    fn axioms_block_is_optional() {
        let spec = ModuleSpec::verma_quotient_m(s(0, 1), s(1, 1)).unwrap();
        let diagram = weight_diagram(&spec, Window::new(-4, 4), false).unwrap();
        let json = to_json(&diagram);
        assert!(!json.contains("axioms"));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["weights"][0]["weight"], "0");
        assert_eq!(value["weights"][0]["dim"], 1);
    }

    #[test]
    fn field_order_is_stable() {
        let spec = ModuleSpec::top_row_n(s(1, 2), s(2, 1)).unwrap();
        let json = to_json(&weight_diagram(&spec, Window::new(0, 3), false).unwrap());
        let family_pos = json.find("\"family\"").unwrap();
        let lambda_pos = json.find("\"lambda\"").unwrap();
        let c_pos = json.find("\"c\"").unwrap();
        let x_pos = json.find("\"x\"").unwrap();
        let window_pos = json.find("\"window\"").unwrap();
        let weights_pos = json.find("\"weights\"").unwrap();
        assert!(family_pos < lambda_pos);
        assert!(lambda_pos < c_pos);
        assert!(c_pos < x_pos);
        assert!(x_pos < window_pos);
        assert!(window_pos < weights_pos);
    }
}
