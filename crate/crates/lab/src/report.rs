//! Machine-readable run records: a versioned JSON document embedding the
//! full configuration (for replay) and one or more tables, plus a flat CSV
//! rendering. Exact rationals travel as "num/den" strings and never pass
//! through floats; floats print with 12 significant digits.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use kplane_core::rat::to_fraction_string;
use kplane_core::trace::{DerivationTrace, StepInput};
use kplane_core::{BoundSpec, Exponent, Operator};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub format_version: u32,
    pub command: String,
    /// Full configuration of the run; `replay` re-executes from this.
    pub config: Value,
    pub tables: Vec<Table>,
    /// One pass/fail line per checked statistic (empty for pure
    /// computations).
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: String,
    pub budget: String,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Value) -> Self {
        Report {
            format_version: REPORT_VERSION,
            command: command.into(),
            config,
            tables: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push_table(&mut self, table: Table) {
        self.tables.push(table);
    }

    pub fn push_check(&mut self, name: impl Into<String>, value: String, budget: String, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            value,
            budget,
            pass,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Flat CSV of all tables: a `table` column plus the union-by-position
    /// of each table's own columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for table in &self.tables {
            out.push_str("table,");
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                out.push_str(&table.name);
                for cell in row {
                    out.push(',');
                    // Cells are numerals, fractions, and identifiers; quote
                    // anything that would break the row.
                    if cell.contains(',') || cell.contains('"') {
                        out.push('"');
                        out.push_str(&cell.replace('"', "\"\""));
                        out.push('"');
                    } else {
                        out.push_str(cell);
                    }
                }
                out.push('\n');
            }
        }
        for check in &self.checks {
            out.push_str(&format!(
                "check,{},{},{},{}\n",
                check.name,
                check.value,
                check.budget,
                if check.pass { "pass" } else { "fail" }
            ));
        }
        out
    }
}

/// 12 significant digits, the report convention for measured floats.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.11e}")
}

/// Fixed 12 decimal places, the convention for kcrit roots.
pub fn fmt_root(x: f64) -> String {
    format!("{x:.12}")
}

/// 17 significant digits, enough to round-trip an f64 exactly; the frame
/// serialization convention.
pub fn fmt_f64_exact(x: f64) -> String {
    format!("{x:.16e}")
}

fn exponent_cell(q: &Exponent) -> String {
    match q {
        Exponent::Finite(r) => to_fraction_string(r),
        Exponent::Infinity => "inf".to_string(),
    }
}

fn bound_cells(b: &BoundSpec) -> Vec<String> {
    vec![
        match b.operator() {
            Operator::MaximalPlate => "M^k_delta".to_string(),
            Operator::MaximalPlane => "N^k".to_string(),
        },
        b.d().to_string(),
        b.k().to_string(),
        to_fraction_string(b.p()),
        exponent_cell(b.q()),
        b.alpha().map(to_fraction_string).unwrap_or_else(|| "-".to_string()),
        if b.eps_loss() { "yes" } else { "no" }.to_string(),
    ]
}

/// A derivation trace as a table: one row per rule application.
pub fn trace_table(trace: &DerivationTrace) -> Table {
    let mut rows = Vec::new();
    for step in &trace.steps {
        let mut row = vec![step.rule.name().to_string()];
        match &step.input {
            StepInput::SeedParams { kind, n } => {
                row.push(format!("{}(n={})", kind.name(), n));
            }
            StepInput::Bound(_) => row.push(String::new()),
        }
        row.extend(bound_cells(&step.output));
        rows.push(row);
    }
    Table {
        name: "derivation".to_string(),
        columns: vec![
            "rule".into(),
            "seed".into(),
            "operator".into(),
            "d".into(),
            "k".into(),
            "p".into(),
            "q".into(),
            "alpha".into(),
            "eps".into(),
        ],
        rows,
    }
}

/// Frame rows (one per basis vector) at exact float precision.
pub fn frame_table(frame: &crate::frame::Frame) -> Table {
    let rows = frame
        .cols()
        .iter()
        .map(|c| c.iter().map(|x| fmt_f64_exact(*x)).collect())
        .collect();
    Table {
        name: "frame".to_string(),
        columns: (0..frame.d()).map(|i| format!("x{i}")).collect(),
        rows,
    }
}
