use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One executed case. `lhs`/`rhs` are canonical strings, present only on failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    pub case: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

impl Report {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.records {
            match r.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::Error => t.error += 1,
            }
        }
        t
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.records).expect("records serialize");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut w = csv::WriterBuilder::new().delimiter(b'\t').from_writer(Vec::new());
        w.write_record(TSV_HEADER).expect("in-memory write");
        for r in &self.records {
            let params = Value::Object(r.params.clone()).to_string();
            let status = serde_json::to_value(r.status).expect("status serializes");
            w.write_record([
                r.suite.as_str(),
                r.case.as_str(),
                params.as_str(),
                status.as_str().unwrap_or_default(),
                r.lhs.as_deref().unwrap_or(""),
                r.rhs.as_deref().unwrap_or(""),
                &r.ms.to_string(),
                r.detail.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Inverse of [`Report::to_tsv`].
    pub fn from_tsv(text: &str) -> Result<Report, io::Error> {
        let invalid = |m: String| io::Error::new(io::ErrorKind::InvalidData, m);
        let mut rd = csv::ReaderBuilder::new().delimiter(b'\t').from_reader(text.as_bytes());
        let header = rd.headers().map_err(|e| invalid(e.to_string()))?.clone();
        if header.iter().ne(TSV_HEADER) {
            return Err(invalid(format!("unexpected header {header:?}")));
        }
        let opt = |s: &str| (!s.is_empty()).then(|| s.to_string());
        let mut records = Vec::new();
        for row in rd.records() {
            let row = row.map_err(|e| invalid(e.to_string()))?;
            let params = match serde_json::from_str(&row[2]).map_err(|e| invalid(e.to_string()))? {
                Value::Object(m) => m,
                v => return Err(invalid(format!("params is not an object: {v}"))),
            };
            records.push(Record {
                suite: row[0].to_string(),
                case: row[1].to_string(),
                params,
                status: serde_json::from_value(Value::String(row[3].to_string()))
                    .map_err(|e| invalid(e.to_string()))?,
                lhs: opt(&row[4]),
                rhs: opt(&row[5]),
                ms: row[6].parse().map_err(|_| invalid(format!("bad ms `{}`", &row[6])))?,
                detail: opt(&row[7]),
            });
        }
        Ok(Report { records })
    }

    pub fn to_human(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Error => "ERROR",
            };
            let _ = writeln!(s, "{tag} {:<10} {} ({} ms)", r.suite, r.case, r.ms);
            if let (Some(l), Some(rh)) = (&r.lhs, &r.rhs) {
                let _ = writeln!(s, "      lhs: {l}\n      rhs: {rh}");
            }
            if let Some(d) = &r.detail {
                let _ = writeln!(s, "      {d}");
            }
        }
        let t = self.tally();
        let _ = writeln!(s, "{} cases: {} passed, {} failed, {} errors", self.records.len(), t.pass, t.fail, t.error);
        s
    }
}

const TSV_HEADER: [&str; 8] = ["suite", "case", "params", "status", "lhs", "rhs", "ms", "detail"];
