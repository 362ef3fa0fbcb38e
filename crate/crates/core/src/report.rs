//! Verdicts with witnesses and per-family coverage.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Witnesses kept per report; further failures are only counted.
pub const MAX_WITNESSES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// A required precondition did not hold, so nothing was decided.
    Precondition,
}

/// A failing instance: which square or equation, and the offending elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    pub instance: String,
    pub elements: Vec<String>,
}

impl Witness {
    pub fn new(instance: impl Into<String>, elements: Vec<String>) -> Self {
        Witness {
            instance: instance.into(),
            elements,
        }
    }
}

/// How many instances of a named family were checked and how many failed.
/// `skipped` counts instances that would need levels beyond the truncation.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coverage {
    pub family: String,
    pub checked: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub coverage: Vec<Coverage>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            coverage: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// A report that decided nothing because `reason` failed.
    pub fn precondition(name: impl Into<String>, reason: impl Into<String>) -> Self {
        let mut r = CheckReport::new(name);
        r.verdict = Verdict::Precondition;
        r.notes.push(reason.into());
        r
    }

    fn family_mut(&mut self, family: &str) -> &mut Coverage {
        if let Some(pos) = self.coverage.iter().position(|c| c.family == family) {
            &mut self.coverage[pos]
        } else {
            self.coverage.push(Coverage {
                family: family.into(),
                ..Coverage::default()
            });
            self.coverage.last_mut().unwrap()
        }
    }

    /// Declares a family so that it shows up in coverage even if empty.
    pub fn family(&mut self, family: &str) {
        self.family_mut(family);
    }

    pub fn pass(&mut self, family: &str) {
        self.family_mut(family).checked += 1;
    }

    pub fn fail(&mut self, family: &str, witness: Witness) {
        let c = self.family_mut(family);
        c.checked += 1;
        c.failed += 1;
        self.push_witness(witness);
    }

    /// Records one instance, building the witness only on failure.
    pub fn record(&mut self, family: &str, ok: bool, witness: impl FnOnce() -> Witness) {
        if ok {
            self.pass(family);
        } else {
            self.fail(family, witness());
        }
    }

    pub fn skip(&mut self, family: &str) {
        self.family_mut(family).skipped += 1;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn push_witness(&mut self, witness: Witness) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(witness);
        }
    }

    /// Folds a sub-report in, prefixing its families and witnesses with its name.
    pub fn absorb(&mut self, sub: CheckReport) {
        for c in sub.coverage {
            let fam = format!("{}/{}", sub.name, c.family);
            let mine = self.family_mut(&fam);
            mine.checked += c.checked;
            mine.failed += c.failed;
            mine.skipped += c.skipped;
        }
        for w in sub.witnesses {
            self.push_witness(Witness {
                instance: format!("{}: {}", sub.name, w.instance),
                elements: w.elements,
            });
        }
        if sub.verdict == Verdict::Fail && self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
        if sub.verdict == Verdict::Precondition {
            self.verdict = Verdict::Precondition;
        }
        for n in sub.notes {
            self.notes.push(format!("{}: {}", sub.name, n));
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn checked(&self) -> usize {
        self.coverage.iter().map(|c| c.checked).sum()
    }

    pub fn failures(&self) -> usize {
        self.coverage.iter().map(|c| c.failed).sum()
    }

    /// Passed without checking a single instance.
    pub fn is_vacuous(&self) -> bool {
        self.verdict == Verdict::Pass && self.checked() == 0
    }

    /// Sorts coverage and witnesses so that equal inputs give equal reports.
    pub fn canonicalize(&mut self) {
        self.coverage.sort();
        self.witnesses.sort();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn fail_iff_witnesses() {
        let mut r = CheckReport::new("t");
        r.pass("a");
        assert!(r.passed() && r.witnesses.is_empty());
        r.fail("a", Witness::new("x", vec!["e".into()]));
        assert!(r.failed() && !r.witnesses.is_empty());
        assert_eq!(r.coverage[0].checked, 2);
    }

    #[test]
    fn vacuous_when_nothing_checked() {
        let mut r = CheckReport::new("t");
        r.family("a");
        r.skip("a");
        assert!(r.is_vacuous());
    }

    #[test]
    fn absorb_prefixes() {
        let mut sub = CheckReport::new("sub");
        sub.fail("sq", Witness::new("n=2", vec![]));
        let mut top = CheckReport::new("top");
        top.absorb(sub);
        assert!(top.failed());
        assert_eq!(top.coverage[0].family, "sub/sq");
        assert_eq!(top.witnesses[0].instance, "sub: n=2");
    }
}
