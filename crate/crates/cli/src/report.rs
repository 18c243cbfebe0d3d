//! Result tables and the pass/fail summary.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Num(f64),
    Text(String),
    /// Written as an empty CSV field and as JSON `null`.
    Missing,
}

impl Value {
    /// Non-finite numbers never reach a table; they become `Missing`.
    pub fn num(x: f64) -> Self {
        if x.is_finite() {
            Value::Num(x)
        } else {
            Value::Missing
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    pub fn render(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Num(x) => format!("{x:e}"),
            Value::Text(s) => s.clone(),
            Value::Missing => String::new(),
        }
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::num(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub name: &'static str,
    pub doc: &'static str,
}

pub const fn col(name: &'static str, doc: &'static str) -> Column {
    Column { name, doc }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &'static str, columns: Vec<Column>) -> Self {
        Table {
            name,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    /// Passes when `residual <= tolerance`.
    Upper,
    /// Passes when `residual > tolerance`.
    Lower,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
}

impl Check {
    pub fn upper(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            residual,
            tolerance,
            bound: Bound::Upper,
        }
    }

    pub fn lower(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            residual: value,
            tolerance: bound,
            bound: Bound::Lower,
        }
    }

    /// A NaN residual always fails.
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::Upper => self.residual <= self.tolerance,
            Bound::Lower => self.residual > self.tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn summary_table(&self) -> Table {
        let mut t = Table::new(
            "summary",
            vec![
                col("check", "identity or invariant checked"),
                col("residual", "measured residual (or value, for lower bounds)"),
                col("bound", "<= for an upper bound on the residual, > for a lower bound"),
                col("tolerance", "tolerance the residual is compared against"),
                col("status", "PASS or FAIL"),
            ],
        );
        for c in &self.checks {
            t.push(vec![
                Value::text(c.name.clone()),
                Value::num(c.residual),
                Value::text(match c.bound {
                    Bound::Upper => "<=",
                    Bound::Lower => ">",
                }),
                Value::num(c.tolerance),
                Value::text(if c.passed() { "PASS" } else { "FAIL" }),
            ]);
        }
        t
    }

    /// Fixed-width summary for the terminal.
    pub fn summary_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = format!("{:<width$}  {:>11}  {:>2}  {:>9}  status\n", "check", "residual", "", "tolerance");
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:>11.3e}  {:>2}  {:>9.1e}  {}\n",
                c.name,
                c.residual,
                match c.bound {
                    Bound::Upper => "<=",
                    Bound::Lower => ">",
                },
                c.tolerance,
                if c.passed() { "PASS" } else { "FAIL" }
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_fails_both_bounds() {
        assert!(!Check::upper("a", f64::NAN, 1.0).passed());
        assert!(!Check::lower("a", f64::NAN, 0.0).passed());
        assert!(Check::upper("a", 1.0, 1.0).passed());
        assert!(!Check::lower("a", 0.0, 0.0).passed());
    }

    #[test]
    fn non_finite_values_render_empty() {
        assert_eq!(Value::from(f64::INFINITY).render(), "");
        assert_eq!(Value::from(0.5).render(), "5e-1");
        assert_eq!(Value::from(3usize).render(), "3");
    }

    #[test]
    fn summary_counts_failures() {
        let r = Report {
            tables: vec![],
            checks: vec![Check::upper("ok", 0.0, 1.0), Check::upper("bad", 2.0, 1.0)],
        };
        assert!(!r.all_passed());
        assert_eq!(r.failures().next().unwrap().name, "bad");
        assert!(r.summary_text().ends_with("2 checks, 1 failed\n"));
        assert_eq!(r.summary_table().rows.len(), 2);
    }
}
