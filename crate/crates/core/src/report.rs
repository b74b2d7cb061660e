//! Named pass/fail checks with failure witnesses.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Where the identity fails: a basis triple, a degree, a matrix entry.
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    /// Passes when there is no defect.
    pub fn from_defect(name: impl Into<String>, defect: Option<String>) -> Self {
        match defect {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, witness())
        }
    }

    /// `CHECK <name> PASS|FAIL [witness]`
    pub fn porcelain(&self) -> String {
        match (&self.passed, &self.witness) {
            (true, _) => format!("CHECK {} PASS", self.name),
            (false, Some(w)) => format!("CHECK {} FAIL {}", self.name, w),
            (false, None) => format!("CHECK {} FAIL", self.name),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends `other`'s checks with `prefix.` prepended to their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn porcelain(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.porcelain());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (&c.passed, &c.witness) {
                (true, _) => writeln!(f, "  ok    {}", c.name)?,
                (false, Some(w)) => writeln!(f, "  FAIL  {}: {}", c.name, w)?,
                (false, None) => writeln!(f, "  FAIL  {}", c.name)?,
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} checks, {} failed",
            self.command,
            self.checks.len(),
            failed
        )
    }
}
