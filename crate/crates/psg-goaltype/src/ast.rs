use std::fmt;

use psg_kernel::Term;

#[derive(Clone, Debug, PartialEq)]
pub enum GtArg {
    TermLit(Term),
    Name(String),
    GVar(String),
    EnvRef(String),
}

impl fmt::Display for GtArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GtArg::TermLit(t) => write!(f, "@{{term \"{t}\"}}"),
            GtArg::Name(n) | GtArg::GVar(n) | GtArg::EnvRef(n) => {
                // anonymous variables are numbered apart at parse time
                if n.starts_with('_') {
                    f.write_str("_")
                } else {
                    f.write_str(n)
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Literal {
    pub negated: bool,
    pub pred: String,
    pub args: Vec<GtArg>,
}

impl Literal {
    pub fn new(pred: &str, args: Vec<GtArg>) -> Literal {
        Literal { negated: false, pred: pred.to_string(), args }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("!")?;
        }
        f.write_str(&self.pred)?;
        if !self.args.is_empty() {
            let parts: Vec<String> = self.args.iter().map(|a| a.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// A conjunction of literals.
#[derive(Clone, Debug, PartialEq)]
pub struct GoalType {
    pub clauses: Vec<Literal>,
}

impl GoalType {
    pub fn any() -> GoalType {
        GoalType { clauses: vec![Literal::new("any", vec![])] }
    }

    pub fn is_any(&self) -> bool {
        self.clauses.len() == 1 && !self.clauses[0].negated && self.clauses[0].pred == "any"
    }
}

impl fmt::Display for GoalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.clauses.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub name: String,
    pub formals: Vec<String>,
    pub body: GoalType,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}) <- {}.", self.name, self.formals.join(","), self.body)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct GtDefs {
    pub rules: Vec<Rule>,
    /// `atomic name/arity` declarations
    pub atomics: Vec<(String, usize)>,
}

impl GtDefs {
    pub fn extend(&mut self, other: GtDefs) {
        self.rules.extend(other.rules);
        self.atomics.extend(other.atomics);
    }

    pub fn defines(&self, name: &str) -> bool {
        self.rules.iter().any(|r| r.name == name)
    }
}

impl fmt::Display for GtDefs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, a) in &self.atomics {
            writeln!(f, "atomic {n}/{a}")?;
        }
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
