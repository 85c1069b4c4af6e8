//! Ordered verdict rows and their CSV form.

use std::io::Write;

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A hypothesis of the checked statement does not hold; not a failure.
    Hypothesis,
    /// Reported quantity without a pass/fail judgement.
    Info,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Hypothesis => "HYPOTHESIS",
            Verdict::Info => "INFO",
        }
    }
}

/// How `residual` is compared with `tolerance`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `residual <= tolerance`.
    AtMost,
    /// `residual >= -tolerance`.
    AtLeast,
    None,
}

impl Relation {
    fn as_str(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::None => "",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub case: String,
    pub quantity: String,
    pub value: f64,
    pub reference: Option<f64>,
    pub residual: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    command: String,
    rows: Vec<Row>,
}

fn judge(relation: Relation, residual: f64, tolerance: f64) -> Verdict {
    let ok = match relation {
        Relation::AtMost => residual <= tolerance,
        Relation::AtLeast => residual >= -tolerance,
        Relation::None => return Verdict::Info,
    };
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            rows: Vec::new(),
        }
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    /// `|value − reference|` (relative when `relative`) at most `tolerance`.
    pub fn compare(
        &mut self,
        case: &str,
        quantity: &str,
        value: f64,
        reference: f64,
        relative: bool,
        tolerance: f64,
    ) -> Verdict {
        let mut residual = (value - reference).abs();
        if relative {
            residual /= reference.abs();
        }
        self.push(case, quantity, value, Some(reference), residual, Relation::AtMost, tolerance)
    }

    /// `residual <= tolerance` for a quantity that should vanish.
    pub fn at_most(&mut self, case: &str, quantity: &str, residual: f64, tolerance: f64) -> Verdict {
        self.push(case, quantity, residual, None, residual, Relation::AtMost, tolerance)
    }

    /// `(lhs − rhs)/|rhs| >= −tolerance`.
    pub fn at_least(&mut self, case: &str, quantity: &str, lhs: f64, rhs: f64, tolerance: f64) -> Verdict {
        let scale = if rhs == 0.0 { 1.0 } else { rhs.abs() };
        self.push(case, quantity, lhs, Some(rhs), (lhs - rhs) / scale, Relation::AtLeast, tolerance)
    }

    pub fn info(&mut self, case: &str, quantity: &str, value: f64) {
        self.push(case, quantity, value, None, f64::NAN, Relation::None, f64::NAN);
    }

    #[allow(clippy::too_many_arguments)]
    pub fn push(
        &mut self,
        case: &str,
        quantity: &str,
        value: f64,
        reference: Option<f64>,
        residual: f64,
        relation: Relation,
        tolerance: f64,
    ) -> Verdict {
        let verdict = judge(relation, residual, tolerance);
        self.rows.push(Row {
            case: case.to_string(),
            quantity: quantity.to_string(),
            value,
            reference,
            residual,
            relation,
            tolerance,
            verdict,
            note: String::new(),
        });
        verdict
    }

    /// Hypothesis `value >= threshold` (up to `tolerance`): PASS or HYPOTHESIS,
    /// never FAIL. Returns whether it holds.
    pub fn flag(&mut self, case: &str, quantity: &str, value: f64, threshold: f64, tolerance: f64) -> bool {
        let residual = value - threshold;
        let holds = residual >= -tolerance;
        self.push(case, quantity, value, Some(threshold), residual, Relation::AtLeast, tolerance);
        if let Some(r) = self.rows.last_mut() {
            r.verdict = if holds { Verdict::Pass } else { Verdict::Hypothesis };
        }
        holds
    }

    /// A row whose statement was not checked because a hypothesis failed.
    pub fn hypothesis(&mut self, case: &str, quantity: &str, value: f64, note: &str) {
        self.rows.push(Row {
            case: case.to_string(),
            quantity: quantity.to_string(),
            value,
            reference: None,
            residual: f64::NAN,
            relation: Relation::None,
            tolerance: f64::NAN,
            verdict: Verdict::Hypothesis,
            note: note.to_string(),
        });
    }

    /// A check that could not be evaluated at all.
    pub fn failure(&mut self, case: &str, quantity: &str, note: &str) {
        self.rows.push(Row {
            case: case.to_string(),
            quantity: quantity.to_string(),
            value: f64::NAN,
            reference: None,
            residual: f64::NAN,
            relation: Relation::None,
            tolerance: f64::NAN,
            verdict: Verdict::Fail,
            note: note.to_string(),
        });
    }

    /// Attaches a note to the most recent row.
    pub fn annotate(&mut self, note: &str) {
        if let Some(r) = self.rows.last_mut() {
            r.note = note.to_string();
        }
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record([
            "command", "case", "quantity", "value", "reference", "residual", "relation",
            "tolerance", "verdict", "note",
        ])?;
        for r in &self.rows {
            let reference = r.reference.map(fmt_float).unwrap_or_default();
            w.write_record([
                self.command.as_str(),
                &r.case,
                &r.quantity,
                &fmt_float(r.value),
                &reference,
                &fmt_float(r.residual),
                r.relation.as_str(),
                &fmt_float(r.tolerance),
                r.verdict.as_str(),
                &r.note,
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// 17 significant digits; empty for NaN.
pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x:.16e}")
    }
}
