//! Result rows and the results CSV.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;

use crate::error::CliError;

pub const HEADER: [&str; 11] = [
    "experiment",
    "alpha",
    "beta",
    "sign",
    "j",
    "k",
    "measured",
    "predicted",
    "ratio",
    "quad_error",
    "verdict",
];

/// Outcome of one assertion, ordered from best to worst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// The run could not produce a trustworthy value (CFL, blow-up,
    /// boundary decay, quadrature failure).
    Invalid,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Invalid => "INVALID",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "PASS" => Some(Verdict::Pass),
            "FAIL" => Some(Verdict::Fail),
            "INVALID" => Some(Verdict::Invalid),
            _ => None,
        }
    }

    /// Process exit status for a run whose worst verdict is `self`.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Invalid => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One line of the results CSV. `index` orders rows that share every key
/// column (for example successive `delta` values) and is not written.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub experiment: String,
    pub alpha: f64,
    pub beta: f64,
    pub sign: i32,
    pub j: Option<u32>,
    pub k: Option<u32>,
    pub measured: f64,
    pub predicted: Option<f64>,
    pub ratio: Option<f64>,
    pub quad_error: Option<f64>,
    pub verdict: Verdict,
    pub index: usize,
}

impl ResultRow {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.experiment
            .cmp(&other.experiment)
            .then(self.alpha.total_cmp(&other.alpha))
            .then(self.beta.total_cmp(&other.beta))
            .then(self.sign.cmp(&other.sign))
            .then(self.j.cmp(&other.j))
            .then(self.k.cmp(&other.k))
            .then(self.index.cmp(&other.index))
    }

    fn fields(&self) -> [String; 11] {
        [
            self.experiment.clone(),
            number(self.alpha),
            number(self.beta),
            self.sign.to_string(),
            self.j.map(|v| v.to_string()).unwrap_or_default(),
            self.k.map(|v| v.to_string()).unwrap_or_default(),
            number(self.measured),
            self.predicted.map(number).unwrap_or_default(),
            self.ratio.map(number).unwrap_or_default(),
            self.quad_error.map(number).unwrap_or_default(),
            self.verdict.to_string(),
        ]
    }
}

/// Shortest round-trip scientific form; identical bits give identical text.
pub fn number(v: f64) -> String {
    format!("{v:e}")
}

/// Sorts by the key columns so output does not depend on scheduling.
pub fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| a.key_cmp(b));
}

pub fn worst_verdict<'a>(verdicts: impl IntoIterator<Item = &'a Verdict>) -> Verdict {
    verdicts.into_iter().copied().max().unwrap_or(Verdict::Pass)
}

/// Writes a header and the rows, LF line endings.
pub fn write_results(w: impl Write, rows: &[ResultRow]) -> Result<(), CliError> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w);
    out.write_record(HEADER)?;
    for r in rows {
        out.write_record(r.fields())?;
    }
    out.flush()?;
    Ok(())
}

/// A results CSV read back as text, values untouched.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRow {
    pub fields: Vec<String>,
}

impl RawRow {
    pub fn get(&self, column: &str) -> &str {
        let i = HEADER
            .iter()
            .position(|c| *c == column)
            .expect("known column");
        &self.fields[i]
    }

    pub fn verdict(&self) -> Option<Verdict> {
        Verdict::parse(self.get("verdict"))
    }
}

pub fn read_results(r: impl std::io::Read) -> Result<Vec<RawRow>, CliError> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != HEADER {
        return Err(CliError::Io(format!("unexpected results header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec?;
        rows.push(RawRow {
            fields: rec.iter().map(str::to_string).collect(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(experiment: &str, j: Option<u32>, index: usize) -> ResultRow {
        ResultRow {
            experiment: experiment.into(),
            alpha: 1.0,
            beta: 1.0,
            sign: 1,
            j,
            k: None,
            measured: 0.1,
            predicted: Some(0.5),
            ratio: None,
            quad_error: None,
            verdict: Verdict::Pass,
            index,
        }
    }

    #[test]
    fn verdict_order_and_codes() {
        assert!(Verdict::Pass < Verdict::Fail && Verdict::Fail < Verdict::Invalid);
        assert_eq!(worst_verdict(&[Verdict::Pass, Verdict::Fail]), Verdict::Fail);
        assert_eq!(worst_verdict(&[]), Verdict::Pass);
        assert_eq!(Verdict::Invalid.exit_code(), 2);
        assert_eq!(Verdict::parse("FAIL"), Some(Verdict::Fail));
    }

    #[test]
    fn rows_sort_by_key() {
        let mut rows = vec![row("b", None, 0), row("a", Some(5), 0), row("a", Some(4), 1), row("a", Some(4), 0)];
        sort_rows(&mut rows);
        let keys: Vec<(String, Option<u32>, usize)> =
            rows.iter().map(|r| (r.experiment.clone(), r.j, r.index)).collect();
        assert_eq!(
            keys,
            vec![
                ("a".into(), Some(4), 0),
                ("a".into(), Some(4), 1),
                ("a".into(), Some(5), 0),
                ("b".into(), None, 0)
            ]
        );
    }

    #[test]
    fn csv_round_trip_is_verbatim() {
        let rows = vec![row("poisson", None, 0), row("vdc", Some(4), 0)];
        let mut buf = Vec::new();
        write_results(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(
            "experiment,alpha,beta,sign,j,k,measured,predicted,ratio,quad_error,verdict\n"
        ));
        assert!(!text.contains('\r'));
        assert!(text.contains("poisson,1e0,1e0,1,,,1e-1,5e-1,,,PASS\n"));
        let back = read_results(&buf[..]).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[1].get("j"), "4");
        assert_eq!(back[0].get("measured"), "1e-1");
        assert_eq!(back[0].verdict(), Some(Verdict::Pass));
    }
}
