//! JSON request/response layer and the CSV sweep emitter.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::estimate::{
    mc_characteristic, mc_krein_moment, mc_moment, mc_weyl_schwinger, GridFunction, McConfig, McEstimate,
    DEFAULT_SEED,
};
use super::{krein_wick_moment, wick_moment, KernelParams};
use crate::error::{Error, Result};
use crate::weyl::schwinger_npoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum McMode {
    Indefinite,
    Krein,
    Weyl,
    Characteristic,
}

impl std::str::FromStr for McMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "indefinite" => Ok(Self::Indefinite),
            "krein" => Ok(Self::Krein),
            "weyl" => Ok(Self::Weyl),
            "characteristic" => Ok(Self::Characteristic),
            other => Err(Error::InvalidInput(format!(
                "unknown mode `{other}` (expected indefinite, krein, weyl or characteristic)"
            ))),
        }
    }
}

fn default_samples() -> u64 {
    McConfig::default().samples
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_chunk() -> u64 {
    McConfig::default().chunk
}

fn default_step() -> f64 {
    1.0
}

/// `alphas` are the Weyl charges (mode `weyl`), `alpha` the Krein scale
/// (mode `krein`), `values` the test-function values at `taus` (mode
/// `characteristic`, integrated with weight `step`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McRequest {
    pub mode: McMode,
    pub taus: Vec<f64>,
    #[serde(default)]
    pub alphas: Option<Vec<f64>>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub c: f64,
    #[serde(default = "default_chunk")]
    pub chunk: u64,
    #[serde(default = "default_step")]
    pub step: f64,
}

impl McRequest {
    pub fn new(mode: McMode, taus: Vec<f64>) -> Self {
        Self {
            mode,
            taus,
            alphas: None,
            alpha: None,
            values: None,
            samples: default_samples(),
            seed: DEFAULT_SEED,
            c: 0.0,
            chunk: default_chunk(),
            step: 1.0,
        }
    }

    pub fn config(&self) -> McConfig {
        McConfig {
            samples: self.samples,
            seed: self.seed,
            step: self.step,
            chunk: self.chunk,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McResponse {
    pub mode: McMode,
    pub taus: Vec<f64>,
    pub mean: f64,
    pub mean_im: f64,
    pub stderr: f64,
    pub samples: u64,
    pub analytic: f64,
    pub sigma_distance: f64,
    pub pass: bool,
}

impl McResponse {
    fn new(req: &McRequest, est: McEstimate, analytic: f64) -> Self {
        let sigma_distance = est.sigma_distance(Complex64::new(analytic, 0.0));
        Self {
            mode: req.mode,
            taus: req.taus.clone(),
            mean: est.mean.re,
            mean_im: est.mean.im,
            stderr: est.stderr,
            samples: est.samples,
            analytic,
            sigma_distance,
            pass: sigma_distance <= 3.0,
        }
    }
}

fn required<'a, T>(v: &'a Option<T>, name: &str, mode: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("mode {mode} requires `{name}`")))
}

/// Runs the estimator selected by `req.mode` next to its analytic target.
pub fn evaluate_request(req: &McRequest) -> Result<McResponse> {
    let cfg = req.config();
    match req.mode {
        McMode::Indefinite => {
            let params = KernelParams { c: req.c };
            let est = mc_moment(&req.taus, &params, &cfg)?;
            Ok(McResponse::new(req, est, wick_moment(&req.taus, &params)?))
        }
        McMode::Krein => {
            let alpha = *required(&req.alpha, "alpha", "krein")?;
            let est = mc_krein_moment(&req.taus, alpha, &cfg)?;
            Ok(McResponse::new(req, est, krein_wick_moment(&req.taus, alpha)?))
        }
        McMode::Weyl => {
            let alphas = required(&req.alphas, "alphas", "weyl")?;
            let est = mc_weyl_schwinger(alphas, &req.taus, &cfg)?;
            Ok(McResponse::new(req, est, schwinger_npoint(alphas, &req.taus)?))
        }
        McMode::Characteristic => {
            let values = required(&req.values, "values", "characteristic")?;
            let f = GridFunction::new(req.taus.clone(), values.clone(), req.step)?;
            let est = mc_characteristic(&f, &cfg)?;
            Ok(McResponse::new(req, est, f.characteristic_target()))
        }
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

/// One header row plus one row per response; time lists are `;`-joined.
pub fn write_csv<W: Write>(rows: &[McResponse], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["mode", "taus", "mean", "mean_im", "stderr", "samples", "analytic", "sigma_distance", "pass"])
        .map_err(io)?;
    for r in rows {
        let mode = serde_json::to_value(r.mode).expect("mode serializes");
        w.write_record([
            mode.as_str().unwrap_or_default().to_string(),
            join(&r.taus),
            r.mean.to_string(),
            r.mean_im.to_string(),
            r.stderr.to_string(),
            r.samples.to_string(),
            r.analytic.to_string(),
            r.sigma_distance.to_string(),
            r.pass.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_evaluate() {
        let req: McRequest =
            serde_json::from_str(r#"{"mode":"indefinite","taus":[1,-1],"samples":20000,"seed":5}"#).unwrap();
        let r = evaluate_request(&req).unwrap();
        assert_eq!(r.analytic, -1.0);
        assert!(r.pass);
        assert!(serde_json::from_str::<McRequest>(r#"{"mode":"krein","taus":[],"beta":1}"#).is_err());
    }

    #[test]
    fn mode_requirements() {
        let req = McRequest::new(McMode::Krein, vec![0.0]);
        assert!(evaluate_request(&req).is_err());
        let mut req = McRequest::new(McMode::Indefinite, vec![1.0, 1.0]);
        req.c = 0.5;
        assert!(matches!(evaluate_request(&req), Err(Error::UnsupportedDomain(_))));
        assert!("bogus".parse::<McMode>().is_err());
    }

    #[test]
    fn csv_has_header() {
        let mut req = McRequest::new(McMode::Weyl, vec![0.0, 1.0]);
        req.alphas = Some(vec![1.0, 1.0]);
        let r = evaluate_request(&req).unwrap();
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("mode,taus,mean"));
        assert!(lines.next().unwrap().starts_with("weyl,0;1,0,"));
    }
}
