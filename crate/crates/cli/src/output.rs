use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::commands::StringyReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// Plain-text form of a `p/q` string: integers lose their `/1`.
fn plain_ratio(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}

pub fn render_rows<T, F>(rows: &[T], format: Format, cells: F, headers: &[&str]) -> String
where
    T: Serialize,
    F: Fn(&T) -> Vec<String>,
{
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if rows.is_empty() {
                w.write_record(headers).expect("write to memory");
            }
            for r in rows {
                w.serialize(r).expect("write to memory");
            }
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
        }
        Format::Plain => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    cells(r)
                        .iter()
                        .map(|c| plain_ratio(c).to_string())
                        .collect()
                })
                .collect();
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for row in &body {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            let mut out = String::new();
            let head: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
            for row in std::iter::once(&head).chain(&body) {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
            }
            out
        }
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub const STRINGY_CSV_HEADERS: [&str; 8] = [
    "source",
    "n",
    "e_stable",
    "known_part",
    "e_st",
    "numerator",
    "denominator",
    "limit_at_one",
];

pub fn render_stringy(r: &StringyReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let sym = r.symbolic.as_ref();
            let record = [
                r.source.clone(),
                r.n.map(|n| n.to_string()).unwrap_or_default(),
                r.e_stable.clone().unwrap_or_default(),
                r.known_part.clone().unwrap_or_default(),
                r.e_st.clone(),
                sym.map(|s| s.numerator.join(" ")).unwrap_or_default(),
                sym.map(|s| s.denominator.join(" ")).unwrap_or_default(),
                sym.map(|s| s.limit_at_one.clone()).unwrap_or_default(),
            ];
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(STRINGY_CSV_HEADERS)
                .expect("write to memory");
            w.write_record(&record).expect("write to memory");
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
        }
        Format::Plain => {
            let mut out = String::new();
            if let Some(n) = r.n {
                writeln!(out, "model = {}, n = {n}, c = {}", r.source, 2 * n).unwrap();
                let e = r.e_stable.as_deref().unwrap_or("unknown");
                writeln!(out, "e(M^s) = {e}").unwrap();
            }
            if let Some(k) = &r.known_part {
                writeln!(out, "known part = {}", plain_ratio(k)).unwrap();
            }
            let e_st = match r.e_st.split_once(' ') {
                Some((v, rest)) => format!("{} {rest}", plain_ratio(v)),
                None => plain_ratio(&r.e_st).to_string(),
            };
            writeln!(out, "e_st = {e_st}").unwrap();
            if let Some(s) = &r.symbolic {
                writeln!(out, "E_st(w) numerator   = [{}]", s.numerator.join(", ")).unwrap();
                writeln!(out, "E_st(w) denominator = [{}]", s.denominator.join(", ")).unwrap();
                writeln!(out, "E_st(1) = {}", plain_ratio(&s.limit_at_one)).unwrap();
            }
            out
        }
    }
}
