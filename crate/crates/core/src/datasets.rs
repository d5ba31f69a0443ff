//! Bundled reference data: the 27-criterion AV readiness hierarchy with its
//! 2019 group weights, and the matching assessment of Greece.

use crate::hierarchy::CriteriaHierarchy;
use crate::scoring::Assessment;

pub const GREECE_HIERARCHY_JSON: &str = include_str!("../../../datasets/greece-2019.json");
pub const GREECE_ASSESSMENT_JSON: &str = include_str!("../../../datasets/greece-assessment-2019.json");

pub fn greece_hierarchy() -> CriteriaHierarchy {
    CriteriaHierarchy::from_json(GREECE_HIERARCHY_JSON).expect("bundled hierarchy parses")
}

pub fn greece_assessment() -> Assessment {
    Assessment::from_json(GREECE_ASSESSMENT_JSON).expect("bundled assessment parses")
}
