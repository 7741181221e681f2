use std::collections::BTreeSet;
use std::fmt;

use super::Focus;

/// Content of a Boolean register: a bit, or inoperative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegisterContent {
    Zero,
    One,
    Div,
}

impl RegisterContent {
    pub fn from_bool(b: bool) -> Self {
        if b {
            RegisterContent::One
        } else {
            RegisterContent::Zero
        }
    }

    /// `None` for an inoperative register.
    pub fn as_bool(self) -> Option<bool> {
        match self {
            RegisterContent::Zero => Some(false),
            RegisterContent::One => Some(true),
            RegisterContent::Div => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            RegisterContent::Zero => '0',
            RegisterContent::One => '1',
            RegisterContent::Div => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '0' => Some(RegisterContent::Zero),
            '1' => Some(RegisterContent::One),
            '-' => Some(RegisterContent::Div),
            _ => None,
        }
    }
}

impl fmt::Display for RegisterContent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Closed register family term.
///
/// Text form: `{f=0, g=1}` is a right-nested composition of singletons, `{}` the empty
/// family, `u + v` composition (right-associative), `hide{f,g}(u)` encapsulation and
/// `(u)` grouping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyTerm {
    Empty,
    Singleton(Focus, RegisterContent),
    Compose(Box<FamilyTerm>, Box<FamilyTerm>),
    Encapsulate(BTreeSet<Focus>, Box<FamilyTerm>),
}

impl FamilyTerm {
    pub fn singleton(focus: Focus, content: RegisterContent) -> Self {
        FamilyTerm::Singleton(focus, content)
    }

    pub fn compose(left: FamilyTerm, right: FamilyTerm) -> Self {
        FamilyTerm::Compose(Box::new(left), Box::new(right))
    }

    pub fn encapsulate(hidden: BTreeSet<Focus>, body: FamilyTerm) -> Self {
        FamilyTerm::Encapsulate(hidden, Box::new(body))
    }

    /// Right-nested composition of singletons, or `Empty` for no bindings.
    pub fn from_bindings<I>(bindings: I) -> Self
    where
        I: IntoIterator<Item = (Focus, RegisterContent)>,
        I::IntoIter: DoubleEndedIterator,
    {
        bindings
            .into_iter()
            .rev()
            .map(|(f, c)| FamilyTerm::singleton(f, c))
            .reduce(|acc, s| FamilyTerm::compose(s, acc))
            .unwrap_or(FamilyTerm::Empty)
    }

    /// The singletons of a right spine `s1 + (s2 + (... + sn))`, if this is one.
    fn binding_list(&self) -> Option<Vec<(&Focus, RegisterContent)>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                FamilyTerm::Singleton(f, c) => {
                    out.push((f, *c));
                    return Some(out);
                }
                FamilyTerm::Compose(l, r) => match &**l {
                    FamilyTerm::Singleton(f, c) => {
                        out.push((f, *c));
                        cur = r;
                    }
                    _ => return None,
                },
                _ => return None,
            }
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTerm::Compose(..) if self.binding_list().is_none() => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for FamilyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(bindings) = self.binding_list() {
            f.write_str("{")?;
            for (i, (focus, content)) in bindings.into_iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{focus}={content}")?;
            }
            return f.write_str("}");
        }
        match self {
            FamilyTerm::Empty => f.write_str("{}"),
            FamilyTerm::Compose(l, r) => {
                l.fmt_operand(f)?;
                f.write_str(" + ")?;
                r.fmt(f)
            }
            FamilyTerm::Encapsulate(hidden, body) => {
                f.write_str("hide{")?;
                for (i, focus) in hidden.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{focus}")?;
                }
                write!(f, "}}({body})")
            }
            FamilyTerm::Singleton(..) => unreachable!("singletons print as binding lists"),
        }
    }
}

impl std::str::FromStr for FamilyTerm {
    type Err = super::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse_family(s)
    }
}
