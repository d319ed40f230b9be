use std::fmt;

/// Where a certification check saw its worst violation.
#[derive(Debug, Clone, PartialEq)]
pub enum Location {
    Scalar(f64),
    Point(Vec<f64>),
    Pair(f64, f64),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Scalar(x) => write!(f, "{x}"),
            Location::Pair(x, y) => write!(f, "({x}, {y})"),
            Location::Point(p) => {
                write!(f, "(")?;
                for (i, v) in p.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Outcome of a numeric certification (monotonicity, convexity,
/// additivity, Schur criteria).
///
/// `worst_violation` is nonnegative and measured in the check's own units;
/// `holds` is decided against the check's tolerance, so a report can hold
/// with a small positive violation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub name: String,
    pub holds: bool,
    pub worst_violation: f64,
    pub location: Option<Location>,
    pub subconditions: Vec<ConditionReport>,
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub fn new(name: impl Into<String>) -> Self {
        ConditionReport {
            name: name.into(),
            holds: true,
            worst_violation: 0.0,
            location: None,
            subconditions: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records a violation of size `amount` at `at`, keeping the worst one.
    /// `tol` decides whether the violation breaks the condition.
    pub(crate) fn observe(&mut self, amount: f64, tol: f64, at: Location) {
        if amount.is_nan() {
            self.holds = false;
            if !self.worst_violation.is_nan() {
                self.worst_violation = f64::NAN;
                self.location = Some(at);
            }
            return;
        }
        if amount > self.worst_violation {
            self.worst_violation = amount;
            self.location = Some(at);
        }
        if amount > tol {
            self.holds = false;
        }
    }

    /// Aggregate of several subconditions: holds iff all of them hold.
    pub fn all_of(name: impl Into<String>, parts: Vec<ConditionReport>) -> Self {
        let mut r = ConditionReport::new(name);
        for p in &parts {
            if !p.holds {
                r.holds = false;
            }
            if p.worst_violation > r.worst_violation || p.worst_violation.is_nan() {
                r.worst_violation = p.worst_violation;
                r.location = p.location.clone();
            }
        }
        r.subconditions = parts;
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn sub(&self, name: &str) -> Option<&ConditionReport> {
        self.subconditions.iter().find(|s| s.name == name)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}={} worst_violation={:.3e}",
            self.name,
            if self.holds { "pass" } else { "FAIL" },
            self.worst_violation
        )?;
        if let Some(loc) = &self.location {
            write!(f, " at {loc}")?;
        }
        Ok(())
    }
}
