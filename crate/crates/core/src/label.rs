//! Vertex decorations: formal products of named functions and kernel twists.

use std::fmt;
use std::str::FromStr;

use crate::error::IdentError;

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

macro_rules! identifier_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Result<Self, IdentError> {
                let s = s.into();
                if is_identifier(&s) {
                    Ok(Self(s))
                } else {
                    Err(IdentError(s))
                }
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl FromStr for $name {
            type Err = IdentError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                Self::new(s)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

identifier_newtype! {
    /// Name of a (possibly unknown) function decorating a vertex.
    FuncName
}

identifier_newtype! {
    /// Index of a kernel `K_ω(x,t) = k_ω(x) h_ω(t)`; decorates edges and names twists.
    KernelIndex
}

/// One factor of a [`Label`].
///
/// The derived order (`Twist < TwistInv < Func`, then by identifier) is the
/// canonical atom order, so twists print in front of the function they scale.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `τ_ω = k_ω(x) / k_ω(0)`.
    Twist(KernelIndex),
    /// `τ_ω⁻¹ = k_ω(0) / k_ω(x)`.
    TwistInv(KernelIndex),
    Func(FuncName),
}

impl Atom {
    pub fn func(name: &str) -> Result<Self, IdentError> {
        FuncName::new(name).map(Atom::Func)
    }

    pub fn twist(index: &str) -> Result<Self, IdentError> {
        KernelIndex::new(index).map(Atom::Twist)
    }

    pub fn twist_inv(index: &str) -> Result<Self, IdentError> {
        KernelIndex::new(index).map(Atom::TwistInv)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Twist(w) => write!(f, "tau[{w}]"),
            Atom::TwistInv(w) => write!(f, "tauinv[{w}]"),
            Atom::Func(name) => write!(f, "{name}"),
        }
    }
}

/// A canonical formal product of atoms. The empty product is the constant 1.
///
/// Atoms are kept sorted and `τ_ω · τ_ω⁻¹` pairs are cancelled on every
/// construction, so two labels denote the same product iff they are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    atoms: Vec<Atom>,
}

impl Label {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut atoms: Vec<Atom> = atoms.into_iter().collect();
        atoms.sort();
        Self {
            atoms: cancel_twists(atoms),
        }
    }

    pub fn func(name: &str) -> Result<Self, IdentError> {
        Ok(Self::from_atoms([Atom::func(name)?]))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mul(&self, other: &Label) -> Label {
        Label::from_atoms(self.atoms.iter().chain(&other.atoms).cloned())
    }

    pub fn with_atom(&self, atom: Atom) -> Label {
        Label::from_atoms(self.atoms.iter().cloned().chain(std::iter::once(atom)))
    }

    pub fn twisted(&self, index: &KernelIndex) -> Label {
        self.with_atom(Atom::Twist(index.clone()))
    }

    pub fn twisted_inv(&self, index: &KernelIndex) -> Label {
        self.with_atom(Atom::TwistInv(index.clone()))
    }
}

// Input is sorted, so all Twist atoms precede all TwistInv atoms and each
// group is ordered by index.
fn cancel_twists(atoms: Vec<Atom>) -> Vec<Atom> {
    let inverse_start = atoms
        .iter()
        .position(|a| !matches!(a, Atom::Twist(_)))
        .unwrap_or(atoms.len());
    let inverse_end = atoms[inverse_start..]
        .iter()
        .position(|a| !matches!(a, Atom::TwistInv(_)))
        .map_or(atoms.len(), |p| inverse_start + p);
    if inverse_start == 0 || inverse_start == inverse_end {
        return atoms;
    }

    let mut twists: Vec<Option<&KernelIndex>> = atoms[..inverse_start]
        .iter()
        .map(|a| match a {
            Atom::Twist(w) => Some(w),
            _ => unreachable!(),
        })
        .collect();
    let mut kept_inverses = Vec::new();
    for atom in &atoms[inverse_start..inverse_end] {
        let Atom::TwistInv(w) = atom else {
            unreachable!()
        };
        match twists.iter_mut().find(|t| t.is_some_and(|t| t == w)) {
            Some(slot) => *slot = None,
            None => kept_inverses.push(atom.clone()),
        }
    }

    let mut out: Vec<Atom> = twists
        .into_iter()
        .flatten()
        .map(|w| Atom::Twist(w.clone()))
        .collect();
    out.extend(kept_inverses);
    out.extend_from_slice(&atoms[inverse_end..]);
    out
}

impl fmt::Display for Label {
    /// Operator-grammar text: atoms joined by `*`, or `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("1");
        }
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}
