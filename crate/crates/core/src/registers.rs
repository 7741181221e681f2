//! Boolean register families in evaluated form.

use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::{FamilyTerm, Focus, RegisterContent};

/// Finite map from foci to register contents. The empty map is the empty family.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegisterFamily {
    bindings: BTreeMap<Focus, RegisterContent>,
}

impl RegisterFamily {
    pub fn empty() -> Self {
        RegisterFamily::default()
    }

    /// Later duplicates clash with earlier ones, exactly as under composition.
    pub fn from_bindings(bindings: impl IntoIterator<Item = (Focus, RegisterContent)>) -> Self {
        let mut family = RegisterFamily::empty();
        for (f, c) in bindings {
            family.compose_binding(f, c);
        }
        family
    }

    pub fn get(&self, f: &Focus) -> Option<RegisterContent> {
        self.bindings.get(f).copied()
    }

    pub fn contains(&self, f: &Focus) -> bool {
        self.bindings.contains_key(f)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Focus, RegisterContent)> + '_ {
        self.bindings.iter().map(|(f, c)| (f, *c))
    }

    pub fn foci(&self) -> impl Iterator<Item = &Focus> + '_ {
        self.bindings.keys()
    }

    /// Overwrites (or adds) a binding.
    pub fn set(&mut self, f: Focus, c: RegisterContent) {
        self.bindings.insert(f, c);
    }

    pub fn remove(&mut self, f: &Focus) -> Option<RegisterContent> {
        self.bindings.remove(f)
    }

    fn compose_binding(&mut self, f: Focus, c: RegisterContent) {
        self.bindings
            .entry(f)
            .and_modify(|old| *old = RegisterContent::Div)
            .or_insert(c);
    }

    /// Union in which a focus bound on both sides becomes inoperative.
    pub fn compose(&self, other: &RegisterFamily) -> RegisterFamily {
        let mut out = self.clone();
        for (f, c) in other.iter() {
            out.compose_binding(f.clone(), c);
        }
        out
    }

    /// Drops the bindings of the given foci.
    pub fn encapsulate<'a>(&self, hidden: impl IntoIterator<Item = &'a Focus>) -> RegisterFamily {
        let mut out = self.clone();
        for f in hidden {
            out.bindings.remove(f);
        }
        out
    }

    /// Binding list term; parsing its rendering evaluates back to `self`.
    pub fn to_term(&self) -> FamilyTerm {
        let items: Vec<_> = self.iter().map(|(f, c)| (f.clone(), c)).collect();
        FamilyTerm::from_bindings(items)
    }
}

impl fmt::Display for RegisterFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (focus, c)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{focus}={c}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<(Focus, RegisterContent)> for RegisterFamily {
    fn from_iter<I: IntoIterator<Item = (Focus, RegisterContent)>>(iter: I) -> Self {
        RegisterFamily::from_bindings(iter)
    }
}

/// Normal form of a family term.
pub fn evaluate_family(t: &FamilyTerm) -> RegisterFamily {
    match t {
        FamilyTerm::Empty => RegisterFamily::empty(),
        FamilyTerm::Singleton(f, c) => RegisterFamily::from_bindings([(f.clone(), *c)]),
        FamilyTerm::Compose(l, r) => evaluate_family(l).compose(&evaluate_family(r)),
        FamilyTerm::Encapsulate(hidden, body) => evaluate_family(body).encapsulate(hidden),
    }
}
