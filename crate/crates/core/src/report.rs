//! Flat report rows and their CSV / JSONL emission.
//!
//! CSV output always starts with a header row, uses LF line endings, and prints
//! reals with 15 significant digits (integral values as plain integers), so equal
//! inputs give byte-identical files.

use std::io::Write;
use std::marker::PhantomData;

use serde::Serialize;

use crate::error::Result;

/// `x` with `sig` significant digits. Non-finite values print as `inf`, `-inf`, `NaN`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.*e}", sig - 1)
    }
}

/// Integral values as integers, everything else with 15 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.0e15 {
        format!("{}", x as i64)
    } else {
        fmt_sig(x, 15)
    }
}

fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> String) -> String {
    v.map(f).unwrap_or_default()
}

/// A row type with a fixed CSV schema.
pub trait CsvRecord: Serialize {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(format!("unknown format `{other}` (expected csv or jsonl)")),
        }
    }
}

/// Writes rows of one schema as CSV (header first) or JSON lines.
pub struct ReportWriter<W: Write, T: CsvRecord> {
    inner: Sink<W>,
    _row: PhantomData<fn(&T)>,
}

enum Sink<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Jsonl(W),
}

impl<W: Write, T: CsvRecord> ReportWriter<W, T> {
    pub fn new(out: W, format: Format) -> Result<Self> {
        let inner = match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(out);
                w.write_record(T::HEADER)?;
                Sink::Csv(Box::new(w))
            }
            Format::Jsonl => Sink::Jsonl(out),
        };
        Ok(ReportWriter {
            inner,
            _row: PhantomData,
        })
    }

    pub fn write(&mut self, row: &T) -> Result<()> {
        match &mut self.inner {
            Sink::Csv(w) => w.write_record(row.fields())?,
            Sink::Jsonl(w) => {
                serde_json::to_writer(&mut *w, row)?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<W> {
        match self.inner {
            Sink::Csv(w) => w
                .into_inner()
                .map_err(|e| crate::Error::Output(e.to_string())),
            Sink::Jsonl(mut w) => {
                w.flush()?;
                Ok(w)
            }
        }
    }
}

/// Renders rows into a string in one go.
pub fn render<T: CsvRecord>(rows: &[T], format: Format) -> Result<String> {
    let mut w = ReportWriter::<Vec<u8>, T>::new(Vec::new(), format)?;
    for r in rows {
        w.write(r)?;
    }
    Ok(String::from_utf8(w.finish()?).expect("rows are utf-8"))
}

/// Every parameter a sum report can carry; unused ones stay `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ReportParams {
    pub p: Option<u64>,
    pub x: Option<f64>,
    pub z: Option<f64>,
    #[serde(rename = "N")]
    pub n_aux: Option<u64>,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub t: Option<u64>,
}

/// One line of the sum-report schema
/// `lemma_id,p,x,z,N,eps,delta,a,b,t,re,im,magnitude,claimed_bound,ratio`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumRow {
    pub lemma_id: String,
    #[serde(flatten)]
    pub params: ReportParams,
    pub re: f64,
    pub im: f64,
    pub magnitude: f64,
    pub claimed_bound: f64,
    pub ratio: f64,
}

impl CsvRecord for SumRow {
    const HEADER: &'static [&'static str] = &[
        "lemma_id",
        "p",
        "x",
        "z",
        "N",
        "eps",
        "delta",
        "a",
        "b",
        "t",
        "re",
        "im",
        "magnitude",
        "claimed_bound",
        "ratio",
    ];

    fn fields(&self) -> Vec<String> {
        let q = &self.params;
        vec![
            self.lemma_id.clone(),
            opt(q.p, |v| v.to_string()),
            opt(q.x, fmt_real),
            opt(q.z, fmt_real),
            opt(q.n_aux, |v| v.to_string()),
            opt(q.eps, fmt_real),
            opt(q.delta, fmt_real),
            opt(q.a, |v| v.to_string()),
            opt(q.b, |v| v.to_string()),
            opt(q.t, |v| v.to_string()),
            fmt_real(self.re),
            fmt_real(self.im),
            fmt_real(self.magnitude),
            fmt_real(self.claimed_bound),
            fmt_real(self.ratio),
        ]
    }
}

/// `p,n_p,exponent,is_record`
impl CsvRecord for crate::nonresidue::ScanRow {
    const HEADER: &'static [&'static str] = &["p", "n_p", "exponent", "is_record"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            self.n_p.to_string(),
            fmt_sig(self.exponent, 15),
            self.is_record.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonresidue::ScanRow;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.6309297535714574, 15), "0.630929753571457");
        assert_eq!(fmt_sig(0.0919698602928606, 15), "0.0919698602928606");
        assert_eq!(fmt_sig(123.456, 6), "123.456");
        assert_eq!(fmt_sig(0.0, 15), "0");
        assert_eq!(fmt_sig(f64::INFINITY, 15), "inf");
        assert_eq!(fmt_sig(1.5e-9, 3), "1.50e-9");
        assert_eq!(fmt_real(20.0), "20");
        assert_eq!(fmt_real(-3.0), "-3");
        assert_eq!(fmt_real(2.5), "2.50000000000000");
    }

    #[test]
    fn csv_has_header_and_lf() {
        let rows = [ScanRow {
            p: 3,
            n_p: 2,
            exponent: 2f64.ln() / 3f64.ln(),
            is_record: true,
        }];
        let s = render(&rows, Format::Csv).unwrap();
        assert_eq!(s, "p,n_p,exponent,is_record\n3,2,0.630929753571457,true\n");
        let empty = render::<ScanRow>(&[], Format::Csv).unwrap();
        assert_eq!(empty, "p,n_p,exponent,is_record\n");
    }

    #[test]
    fn jsonl_mirrors_field_names() {
        let row = SumRow {
            lemma_id: "T2212.455".into(),
            params: ReportParams {
                p: Some(13),
                x: Some(12.0),
                n_aux: Some(17),
                ..Default::default()
            },
            re: 0.0,
            im: 0.0,
            magnitude: 0.0,
            claimed_bound: 9.25,
            ratio: 0.0,
        };
        let line = render(std::slice::from_ref(&row), Format::Jsonl).unwrap();
        let v: serde_json::Value = serde_json::from_str(line.trim_end()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        for h in SumRow::HEADER {
            assert!(keys.contains(h), "missing {h}");
        }
        assert_eq!(keys.len(), SumRow::HEADER.len());
        let csv = render(&[row], Format::Csv).unwrap();
        assert_eq!(
            csv.lines().nth(1).unwrap(),
            "T2212.455,13,12,,17,,,,,,0,0,0,9.25000000000000,0"
        );
    }
}
