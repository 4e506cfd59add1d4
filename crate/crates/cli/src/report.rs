use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::CliResult;
use crate::number::fmt12;

pub const COLUMNS: [&str; 13] = [
    "function",
    "rect",
    "x",
    "y",
    "theorem",
    "q",
    "lhs",
    "bound",
    "slack",
    "tightness",
    "hypothesis_status",
    "residual",
    "status",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warning,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warning => "warning",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One line of a report; `None` fields are left empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub function: String,
    pub rect: String,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub theorem: String,
    pub q: Option<f64>,
    pub lhs: Option<f64>,
    pub bound: Option<f64>,
    pub slack: Option<f64>,
    pub tightness: Option<f64>,
    pub hypothesis_status: Option<String>,
    pub residual: Option<f64>,
    pub status: Status,
}

impl Row {
    pub fn new(function: &str, rect: String, theorem: impl Into<String>) -> Self {
        Row {
            function: function.to_string(),
            rect,
            x: None,
            y: None,
            theorem: theorem.into(),
            q: None,
            lhs: None,
            bound: None,
            slack: None,
            tightness: None,
            hypothesis_status: None,
            residual: None,
            status: Status::Pass,
        }
    }

    pub fn fields(&self) -> [String; 13] {
        let num = |v: Option<f64>| v.map(fmt12).unwrap_or_default();
        [
            self.function.clone(),
            self.rect.clone(),
            num(self.x),
            num(self.y),
            self.theorem.clone(),
            num(self.q),
            num(self.lhs),
            num(self.bound),
            num(self.slack),
            num(self.tightness),
            self.hypothesis_status.clone().unwrap_or_default(),
            num(self.residual),
            self.status.label().to_string(),
        ]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub warning: usize,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Self {
        let mut s = Summary {
            total: rows.len(),
            ..Summary::default()
        };
        for r in rows {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Warning => s.warning += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &str, rows: Vec<Row>) -> Self {
        let summary = Summary::of(&rows);
        Report {
            command: command.to_string(),
            rows,
            summary,
        }
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COLUMNS)?;
        for row in &self.rows {
            w.write_record(row.fields())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_fields_and_quoting() {
        let mut row = Row::new("product", "0,1,0,1".into(), "T1");
        row.lhs = Some(0.25);
        let rep = Report::new("bounds", vec![row]);
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), COLUMNS.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "product,\"0,1,0,1\",,,T1,,0.25,,,,,,pass"
        );
    }

    #[test]
    fn summary_counts() {
        let mut rows = vec![Row::new("f", "r".into(), "T1"); 4];
        rows[1].status = Status::Fail;
        rows[2].status = Status::Warning;
        let rep = Report::new("bounds", rows);
        assert_eq!(
            rep.summary,
            Summary {
                total: 4,
                pass: 2,
                fail: 1,
                warning: 1
            }
        );
        assert_eq!(rep.exit_code(), 1);
        let v: serde_json::Value = {
            let mut buf = Vec::new();
            rep.write_json(&mut buf).unwrap();
            serde_json::from_slice(&buf).unwrap()
        };
        assert_eq!(v["summary"]["warning"], 1);
        assert_eq!(v["rows"][0]["x"], serde_json::Value::Null);
    }
}
