//! The bundled Greece data set end to end.

mod common;

use ahp_readiness::datasets::{greece_assessment, greece_hierarchy, GREECE_HIERARCHY_JSON};
use ahp_readiness::hierarchy::{bottom_criteria, compose_global_weights, top_criteria, validate_hierarchy, CriteriaHierarchy};
use ahp_readiness::report::{breakdown_chart_data, render_report, Format, Report};
use ahp_readiness::scoring::{assess, sensitivity, sensitivity_one_at_a_time, Assessment, Characterization};
use chrono::TimeZone;

#[test]
fn hierarchy_is_valid_with_uneven_tier_sums() {
    let h = greece_hierarchy();
    assert!(validate_hierarchy(&h).is_empty());
    let sums: Vec<f64> = h.categories.iter().map(|c| c.weight_sum()).collect();
    for (s, expected) in sums.iter().zip([0.999, 1.000, 1.001, 1.000]) {
        assert!((s - expected).abs() < 1e-9);
    }
    assert!((h.category_weight_sum() - 1.0).abs() < 1e-9);
    let back = CriteriaHierarchy::from_json(&h.to_json()).unwrap();
    assert_eq!(back, h);
    assert_eq!(CriteriaHierarchy::from_json(GREECE_HIERARCHY_JSON).unwrap(), h);
}

#[test]
fn top_and_bottom_criteria() {
    let t = compose_global_weights(&greece_hierarchy()).unwrap();
    assert_eq!(top_criteria(&t, 3), ["TI4", "TI5", "TI2"]);
    assert_eq!(bottom_criteria(&t, 3), ["I4", "I8", "I7"]);
    // 0.155 * 0.170 = 0.02635 sits just above 0.155 * 0.168 = 0.02604
    assert!(t.get("I6").unwrap().rank < t.get("I2").unwrap().rank);
}

#[test]
fn exclusions_renormalize_within_their_category() {
    let r = assess(&greece_hierarchy(), &greece_assessment()).unwrap();
    let pl6 = r.criterion("PL6").unwrap();
    let oracle = 0.228 / (0.999 - 0.130) * 0.236;
    assert!((pl6.normalized_weight - oracle).abs() < 1e-12);
    let i5 = r.criterion("I5").unwrap();
    assert!((i5.normalized_weight - 0.255 / 0.688 * 0.155).abs() < 1e-12);
    // no exclusions in TI: composed weight exactly
    let ti4 = r.criterion("TI4").unwrap();
    assert_eq!(ti4.normalized_weight, 0.408 * 0.299);
    for id in ["PL7", "I6", "I7", "I8"] {
        let c = r.criterion(id).unwrap();
        assert!(c.excluded && c.weighted_score == 0.0 && c.score.is_none());
    }
    assert!((r.overall_index - r.index_from_categories()).abs() < 1e-12);
}

#[test]
fn all_very_high_reaches_the_tier_sum_product() {
    let h = greece_hierarchy();
    let a = Assessment::uniform("best", &h, Characterization::VeryHigh);
    let r = assess(&h, &a).unwrap();
    let product: f64 = h.categories.iter().map(|c| c.local_weight * c.weight_sum()).sum();
    assert!((r.overall_index - product).abs() < 1e-12);
    assert!((r.overall_index - 1.0).abs() < 0.01);
    assert!(sensitivity(&r).is_empty());
    let zero = assess(&h, &Assessment::uniform("worst", &h, Characterization::VeryLow)).unwrap();
    assert_eq!(zero.overall_index, 0.0);
}

#[test]
fn sensitivity_top_row_is_ti4() {
    let (h, a) = (greece_hierarchy(), greece_assessment());
    let r = assess(&h, &a).unwrap();
    let fast = sensitivity(&r);
    assert_eq!(fast[0].criterion_id, "TI4");
    assert!((fast[0].delta - 0.408 * 0.299 * 0.25).abs() < 1e-12);
    assert!((fast[0].delta - 0.0305).abs() < 0.00005);
    // rescoring each raise from scratch gives the same table
    let slow = sensitivity_one_at_a_time(&h, &a).unwrap();
    assert_eq!(fast.len(), slow.len());
    for (f, s) in fast.iter().zip(&slow) {
        assert_eq!(f.criterion_id, s.criterion_id);
        assert!((f.delta - s.delta).abs() < 1e-12);
    }
    assert_eq!(fast.len(), 23);
}

#[test]
fn breakdown_chart_has_four_categories_and_overall() {
    let r = assess(&greece_hierarchy(), &greece_assessment()).unwrap();
    let data = breakdown_chart_data(&r);
    let labels: Vec<&str> = data.iter().map(|d| d.0.as_str()).collect();
    assert_eq!(
        labels,
        ["Policy and Legislation", "Technology and Innovation", "Infrastructure", "Consumer Acceptance", "Overall"]
    );
    assert_eq!(data[4].1, r.overall_index);
}

#[test]
fn reports_render_rounded_columns() {
    let r = assess(&greece_hierarchy(), &greece_assessment()).unwrap();
    let at = chrono::Utc.with_ymd_and_hms(2019, 6, 1, 12, 0, 0).unwrap();
    let md = render_report(&r, Format::Markdown, at);
    for needle in [
        "**Overall readiness index: 32.2%**",
        "| PL4 | 0.053 | 0.75 | 0.03951 |",
        "| TI5 | 0.082 | 0.25 | 0.02060 |",
        "| CA3 | 0.050 | 0.75 | 0.03724 |",
        "| PL7 | excluded |",
        "## Technology and Innovation (11.8%)",
        "| TI4 | very low | low | 0.03050 |",
    ] {
        assert!(md.contains(needle), "missing {needle:?}\n{md}");
    }
    let json = render_report(&r, Format::Json, at);
    let back: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(back.overall_index, r.overall_index);
    assert_eq!(back.generated_at, "2019-06-01T12:00:00Z");
    assert_eq!(back.categories.keys().next().unwrap(), "Policy and Legislation");
    assert_eq!(back.breakdown.len(), 5);
    // repeated rendering is byte-identical
    assert_eq!(json, render_report(&r, Format::Json, at));
}
