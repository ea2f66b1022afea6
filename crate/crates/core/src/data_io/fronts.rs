//! CSV layout for scenario and robust fronts.
//!
//! Columns: `target_return, return, risk_or_regret, argmax_scenario,
//! weight_1 .. weight_n`. Floats carry 10 significant digits.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::pareto::FrontPoint;
use crate::robust::RobustFrontPoint;

/// A point that can be written as one front CSV row.
pub trait FrontRow {
    fn target_return(&self) -> f64;
    fn ret(&self) -> f64;
    fn risk_or_regret(&self) -> f64;
    /// Empty for scenario fronts.
    fn argmax_scenario(&self) -> &str;
    fn weights(&self) -> &[f64];
}

impl FrontRow for FrontPoint {
    fn target_return(&self) -> f64 {
        self.target_r
    }
    fn ret(&self) -> f64 {
        self.ret
    }
    fn risk_or_regret(&self) -> f64 {
        self.risk
    }
    fn argmax_scenario(&self) -> &str {
        ""
    }
    fn weights(&self) -> &[f64] {
        self.x.weights()
    }
}

impl FrontRow for RobustFrontPoint {
    fn target_return(&self) -> f64 {
        self.target_r
    }
    fn ret(&self) -> f64 {
        self.ret
    }
    fn risk_or_regret(&self) -> f64 {
        self.regret
    }
    fn argmax_scenario(&self) -> &str {
        &self.argmax_scenario
    }
    fn weights(&self) -> &[f64] {
        self.x.weights()
    }
}

/// One parsed row of a front CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvFrontRow {
    pub target_return: f64,
    pub ret: f64,
    pub risk_or_regret: f64,
    pub argmax_scenario: Option<String>,
    pub weights: Vec<f64>,
}

impl FrontRow for CsvFrontRow {
    fn target_return(&self) -> f64 {
        self.target_return
    }
    fn ret(&self) -> f64 {
        self.ret
    }
    fn risk_or_regret(&self) -> f64 {
        self.risk_or_regret
    }
    fn argmax_scenario(&self) -> &str {
        self.argmax_scenario.as_deref().unwrap_or("")
    }
    fn weights(&self) -> &[f64] {
        &self.weights
    }
}

pub(crate) fn fmt_float(v: f64) -> String {
    format!("{v:.9e}")
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse(format!("{other:?}")),
    }
}

/// Renders a front as CSV text. Rows are sorted by return; `n_assets` fixes
/// the weight columns so an empty front still gets a full header.
pub fn front_csv_string<P: FrontRow>(points: &[P], n_assets: usize) -> Result<String> {
    if let Some(p) = points.iter().find(|p| p.weights().len() != n_assets) {
        return Err(Error::DimensionMismatch {
            expected: n_assets,
            found: p.weights().len(),
        });
    }
    let mut order: Vec<&P> = points.iter().collect();
    order.sort_by(|a, b| a.ret().total_cmp(&b.ret()));

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![
        "target_return".to_string(),
        "return".into(),
        "risk_or_regret".into(),
        "argmax_scenario".into(),
    ];
    header.extend((1..=n_assets).map(|i| format!("weight_{i}")));
    w.write_record(&header).map_err(csv_err)?;
    for p in order {
        let mut rec = vec![
            fmt_float(p.target_return()),
            fmt_float(p.ret()),
            fmt_float(p.risk_or_regret()),
            p.argmax_scenario().to_string(),
        ];
        rec.extend(p.weights().iter().map(|&x| fmt_float(x)));
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_front_csv<P: FrontRow>(points: &[P], n_assets: usize, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, front_csv_string(points, n_assets)?)?;
    Ok(())
}

/// Reads a front CSV back. Returns the weight column count and the rows.
pub fn read_front_csv(path: impl AsRef<Path>) -> Result<(usize, Vec<CsvFrontRow>)> {
    let text = fs::read_to_string(path)?;
    parse_front_csv(&text)
}

pub fn parse_front_csv(text: &str) -> Result<(usize, Vec<CsvFrontRow>)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(csv_err)?.clone();
    let fixed = ["target_return", "return", "risk_or_regret", "argmax_scenario"];
    if header.len() < fixed.len() || header.iter().zip(fixed).any(|(h, f)| h != f) {
        return Err(Error::Parse(format!(
            "front CSV header must start with {}",
            fixed.join(",")
        )));
    }
    let n = header.len() - fixed.len();
    for (i, h) in header.iter().skip(fixed.len()).enumerate() {
        if h != format!("weight_{}", i + 1) {
            return Err(Error::Parse(format!("unexpected column {h:?}")));
        }
    }
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let num = |k: usize| -> Result<f64> {
            rec[k].trim().parse::<f64>().map_err(|e| {
                Error::Parse(format!("row {}, column {}: {e}", line + 2, header[k].to_string()))
            })
        };
        let argmax = rec[3].trim();
        rows.push(CsvFrontRow {
            target_return: num(0)?,
            ret: num(1)?,
            risk_or_regret: num(2)?,
            argmax_scenario: (!argmax.is_empty()).then(|| argmax.to_string()),
            weights: (fixed.len()..header.len()).map(num).collect::<Result<_>>()?,
        });
    }
    Ok((n, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Portfolio;

    fn point(ret: f64, risk: f64, w: Vec<f64>) -> FrontPoint {
        FrontPoint {
            x: Portfolio::new(w).unwrap(),
            ret,
            risk,
            target_r: ret,
        }
    }

    #[test]
    fn empty_front_is_header_only() {
        let s = front_csv_string::<FrontPoint>(&[], 3).unwrap();
        assert_eq!(
            s,
            "target_return,return,risk_or_regret,argmax_scenario,weight_1,weight_2,weight_3\n"
        );
        let (n, rows) = parse_front_csv(&s).unwrap();
        assert_eq!((n, rows.len()), (3, 0));
    }

    #[test]
    fn one_point_front_is_two_lines() {
        let s = front_csv_string(&[point(0.05, 0.01, vec![0.25, 0.75])], 2).unwrap();
        assert_eq!(s.lines().count(), 2);
        assert!(s.lines().nth(1).unwrap().contains(",,"));
    }

    #[test]
    fn round_trip_keeps_ten_digits_and_sorts() {
        let pts = vec![
            point(0.0912345678912, 0.0334, vec![0.1, 0.9]),
            point(0.0312345678912, 0.0123456789123, vec![1.0 / 3.0, 2.0 / 3.0]),
        ];
        let s = front_csv_string(&pts, 2).unwrap();
        let (_, rows) = parse_front_csv(&s).unwrap();
        assert!(rows[0].ret < rows[1].ret);
        let close = |a: f64, b: f64| ((a - b) / b).abs() < 5e-10;
        assert!(close(rows[0].ret, 0.0312345678912));
        assert!(close(rows[0].risk_or_regret, 0.0123456789123));
        assert!(close(rows[0].weights[0], 1.0 / 3.0));
        assert_eq!(rows[0].argmax_scenario, None);
        // writing what was read gives the same text
        assert_eq!(front_csv_string(&rows, 2).unwrap(), s);
    }

    #[test]
    fn bad_inputs() {
        assert!(front_csv_string(&[point(0.05, 0.01, vec![0.5, 0.5])], 3).is_err());
        assert!(parse_front_csv("a,b\n1,2\n").is_err());
        let bad = "target_return,return,risk_or_regret,argmax_scenario,weight_1\n1,x,1,,1\n";
        assert!(matches!(parse_front_csv(bad), Err(Error::Parse(_))));
    }
}
