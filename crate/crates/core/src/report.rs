//! One-shot analysis of a lattice.

use std::time::Duration;

use serde::Serialize;

use crate::dimension::{dim_bounds, dim_sd_extremal, dimension_oracle, DimBounds};
use crate::doubling::{certify, DoublingCertificate, Verdicts};
use crate::error::{Error, Result};
use crate::labelling::left_modular;
use crate::lattice::Lattice;
use crate::shelling::{shellable_verdict, ShellVerdict};

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub method: &'static str,
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub length: usize,
    pub jirr: usize,
    pub mirr: usize,
    pub extremal: bool,
    pub join_extremal: bool,
    pub meet_extremal: bool,
    pub join_semidistributive: bool,
    pub meet_semidistributive: bool,
    pub semidistributive: bool,
    pub lm_chain: Option<Vec<String>>,
    pub shellability: ShellVerdict,
    pub dimension: DimensionReport,
    pub bounds: DimBounds,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Verdicts>,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub chain_cap: usize,
    pub oracle_cap: usize,
    pub budget: Option<Duration>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            chain_cap: crate::shelling::DEFAULT_CHAIN_CAP,
            oracle_cap: crate::dimension::DEFAULT_ORACLE_CAP,
            budget: Some(crate::dimension::DEFAULT_BUDGET),
        }
    }
}

pub fn analyze(l: &Lattice, cert: Option<&DoublingCertificate>, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let ext = l.extremality();
    let sd = l.semidistributivity();
    let semidistributive = sd.is_jsd && sd.is_msd;
    let lm = left_modular(l);
    let dimension = if l.n() == 1 {
        DimensionReport {
            method: "trivial",
            value: Some(1),
            note: Some("one-element lattice counted as dimension 1".into()),
        }
    } else if semidistributive && ext.extremal {
        let r = dim_sd_extremal(l, opts.budget)?;
        DimensionReport {
            method: "chromatic",
            value: Some(r.chi),
            note: None,
        }
    } else {
        match dimension_oracle(l, opts.oracle_cap) {
            Ok(d) => DimensionReport {
                method: "critical_pairs",
                value: Some(d),
                note: None,
            },
            Err(e @ Error::CapExceeded { .. }) => DimensionReport {
                method: "critical_pairs",
                value: None,
                note: Some(e.to_string()),
            },
            Err(e) => return Err(e),
        }
    };
    let certificate = cert.map(certify);
    if let (Some(v), true) = (certificate, cert.is_some_and(|c| c.congruence_uniform)) {
        if v.extremal != ext.extremal {
            return Err(Error::TheoremViolation(
                "certificate and direct extremality disagree".into(),
            ));
        }
    }
    Ok(AnalysisReport {
        n: l.n(),
        length: ext.length,
        jirr: ext.jirr,
        mirr: ext.mirr,
        extremal: ext.extremal,
        join_extremal: ext.join_extremal,
        meet_extremal: ext.meet_extremal,
        join_semidistributive: sd.is_jsd,
        meet_semidistributive: sd.is_msd,
        semidistributive,
        lm_chain: lm
            .lm_chain
            .map(|c| c.iter().map(|&x| l.label(x)).collect()),
        shellability: shellable_verdict(l, cert, opts.chain_cap),
        dimension,
        bounds: dim_bounds(l),
        certificate,
    })
}
