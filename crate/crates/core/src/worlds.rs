//! Finite universes of possible worlds and propositions as world subsets.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest atom count [`Universe::enumerate`] accepts (2^20 worlds).
pub const MAX_ENUMERATED_ATOMS: usize = 20;

/// A possible world: a total Boolean valuation over the universe's atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct World {
    id: usize,
    /// Aligned with the universe's atom order.
    valuation: Vec<bool>,
}

impl World {
    pub fn id(&self) -> usize {
        self.id
    }

    /// Truth values in atom order.
    pub fn values(&self) -> &[bool] {
        &self.valuation
    }
}

#[derive(Debug, PartialEq, Eq)]
struct UniverseData {
    atoms: Vec<String>,
    worlds: Vec<World>,
}

/// A finite set of possible worlds with dense ids `0..n`.
///
/// Cloning is cheap; measures and relations hold a clone and compare
/// universes on every binary operation.
#[derive(Clone)]
pub struct Universe(Arc<UniverseData>);

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe")
            .field("atoms", &self.0.atoms)
            .field("worlds", &self.0.worlds.len())
            .finish()
    }
}

impl Universe {
    /// Builds a universe from explicit valuations, or enumerates all
    /// `2^|atoms|` valuations when `worlds` is `None`.
    pub fn build(atoms: &[&str], worlds: Option<&[BTreeMap<String, bool>]>) -> Result<Self> {
        match worlds {
            None => Self::enumerate(atoms),
            Some(ws) => Self::explicit(atoms, ws),
        }
    }

    /// All valuations in lexicographic order over `atoms` with false < true,
    /// so the first atom is the most significant.
    pub fn enumerate(atoms: &[&str]) -> Result<Self> {
        let atoms = unique_atoms(atoms)?;
        let k = atoms.len();
        if k > MAX_ENUMERATED_ATOMS {
            return Err(Error::TooManyAtoms {
                atoms: k,
                limit: MAX_ENUMERATED_ATOMS,
            });
        }
        let worlds = (0..1usize << k)
            .map(|id| World {
                id,
                valuation: (0..k).map(|j| id >> (k - 1 - j) & 1 == 1).collect(),
            })
            .collect();
        Ok(Self(Arc::new(UniverseData { atoms, worlds })))
    }

    /// Worlds in the given order. Two worlds may share a valuation.
    pub fn explicit(atoms: &[&str], worlds: &[BTreeMap<String, bool>]) -> Result<Self> {
        let atoms = unique_atoms(atoms)?;
        let worlds = worlds
            .iter()
            .enumerate()
            .map(|(id, map)| {
                if let Some(unknown) = map.keys().find(|name| !atoms.contains(name)) {
                    return Err(Error::UnknownAtom(unknown.clone()));
                }
                let valuation = atoms
                    .iter()
                    .map(|a| {
                        map.get(a).copied().ok_or_else(|| Error::MissingAtom {
                            world: id,
                            atom: a.clone(),
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(World { id, valuation })
            })
            .collect::<Result<_>>()?;
        Ok(Self(Arc::new(UniverseData { atoms, worlds })))
    }

    /// `n` worlds over no atoms; for relations given directly as matrices.
    pub fn of_size(n: usize) -> Self {
        let worlds = (0..n)
            .map(|id| World {
                id,
                valuation: Vec::new(),
            })
            .collect();
        Self(Arc::new(UniverseData {
            atoms: Vec::new(),
            worlds,
        }))
    }

    pub fn atoms(&self) -> &[String] {
        &self.0.atoms
    }

    pub fn worlds(&self) -> &[World] {
        &self.0.worlds
    }

    pub fn len(&self) -> usize {
        self.0.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.worlds.is_empty()
    }

    pub fn world(&self, id: usize) -> Option<&World> {
        self.0.worlds.get(id)
    }

    pub fn atom_index(&self, atom: &str) -> Option<usize> {
        self.0.atoms.iter().position(|a| a == atom)
    }

    /// `(atom, value)` pairs of world `id` in atom order.
    pub fn valuation(&self, id: usize) -> impl Iterator<Item = (&str, bool)> + '_ {
        let world = &self.0.worlds[id];
        self.0
            .atoms
            .iter()
            .map(String::as_str)
            .zip(world.valuation.iter().copied())
    }
}

fn unique_atoms(atoms: &[&str]) -> Result<Vec<String>> {
    let mut seen = HashSet::new();
    for a in atoms {
        if !seen.insert(*a) {
            return Err(Error::DuplicateAtom(a.to_string()));
        }
    }
    Ok(atoms.iter().map(|a| a.to_string()).collect())
}

/// A Boolean formula over atom names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<&str> {
        fn walk<'a>(f: &'a Formula, out: &mut Vec<&'a str>) {
            match f {
                Formula::Atom(name) => {
                    if !out.contains(&name.as_str()) {
                        out.push(name);
                    }
                }
                Formula::Not(a) => walk(a, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Evaluates under `lookup`, which maps an atom name to its truth value.
    pub fn holds(&self, lookup: &impl Fn(&str) -> bool) -> bool {
        match self {
            Formula::Atom(name) => lookup(name),
            Formula::Not(a) => !a.holds(lookup),
            Formula::And(a, b) => a.holds(lookup) && b.holds(lookup),
            Formula::Or(a, b) => a.holds(lookup) || b.holds(lookup),
            Formula::Implies(a, b) => !a.holds(lookup) || b.holds(lookup),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Not(a) => write!(f, "!{a}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

/// A set of worlds of one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proposition {
    universe: Universe,
    members: Vec<bool>,
}

impl Proposition {
    pub fn from_ids(universe: &Universe, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members = vec![false; universe.len()];
        for id in ids {
            *members.get_mut(id).ok_or(Error::UnknownWorld(id))? = true;
        }
        Ok(Self {
            universe: universe.clone(),
            members,
        })
    }

    pub fn from_mask(universe: &Universe, members: Vec<bool>) -> Result<Self> {
        if members.len() != universe.len() {
            return Err(Error::LengthMismatch {
                expected: universe.len(),
                actual: members.len(),
            });
        }
        Ok(Self {
            universe: universe.clone(),
            members,
        })
    }

    pub fn all(universe: &Universe) -> Self {
        Self {
            universe: universe.clone(),
            members: vec![true; universe.len()],
        }
    }

    pub fn empty(universe: &Universe) -> Self {
        Self {
            universe: universe.clone(),
            members: vec![false; universe.len()],
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.get(id).copied().unwrap_or(false)
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter_map(|(i, &m)| m.then_some(i))
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn complement(&self) -> Self {
        Self {
            universe: self.universe.clone(),
            members: self.members.iter().map(|m| !m).collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(Self {
            universe: self.universe.clone(),
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

/// The worlds of `universe` whose valuation satisfies `formula`.
pub fn eval_formula(universe: &Universe, formula: &Formula) -> Result<Proposition> {
    let mut indices = BTreeMap::new();
    for atom in formula.atoms() {
        let idx = universe
            .atom_index(atom)
            .ok_or_else(|| Error::UnknownAtom(atom.to_string()))?;
        indices.insert(atom, idx);
    }
    let members = universe
        .worlds()
        .iter()
        .map(|w| formula.holds(&|name| w.valuation[indices[name]]))
        .collect();
    Ok(Proposition {
        universe: universe.clone(),
        members,
    })
}

/// True iff `props` are pairwise disjoint and cover the universe.
pub fn is_partition(universe: &Universe, props: &[Proposition]) -> bool {
    if props.iter().any(|p| p.universe != *universe) {
        return false;
    }
    (0..universe.len()).all(|w| props.iter().filter(|p| p.contains(w)).count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn valuations(u: &Universe) -> Vec<Vec<bool>> {
        u.worlds().iter().map(|w| w.values().to_vec()).collect()
    }

    #[test]
    fn enumerates_one_atom() {
        let u = Universe::enumerate(&["a"]).unwrap();
        assert_eq!(valuations(&u), [[false], [true]]);
    }

    #[test]
    fn enumerates_lexicographically() {
        let u = Universe::enumerate(&["a", "b"]).unwrap();
        assert_eq!(
            valuations(&u),
            [[false, false], [false, true], [true, false], [true, true]]
        );
        assert!(u.worlds().iter().enumerate().all(|(i, w)| w.id() == i));
    }

    #[test]
    fn explicit_world() {
        let w: BTreeMap<String, bool> = [("a".to_string(), true)].into();
        let u = Universe::build(&["a"], Some(&[w])).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!(u.valuation(0).collect::<Vec<_>>(), [("a", true)]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Universe::enumerate(&["a", "a"]).unwrap_err(),
            Error::DuplicateAtom("a".into())
        );
        let missing: BTreeMap<String, bool> = BTreeMap::new();
        assert!(matches!(
            Universe::explicit(&["a"], &[missing]),
            Err(Error::MissingAtom { world: 0, .. })
        ));
        let unknown: BTreeMap<String, bool> = [("a".into(), true), ("z".into(), false)].into();
        assert_eq!(
            Universe::explicit(&["a"], &[unknown]).unwrap_err(),
            Error::UnknownAtom("z".into())
        );
        let names: Vec<String> = (0..21).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        assert!(matches!(
            Universe::enumerate(&refs),
            Err(Error::TooManyAtoms { atoms: 21, .. })
        ));
    }

    #[test]
    fn tautology_and_contradiction() {
        let u = Universe::enumerate(&["a"]).unwrap();
        let a = Formula::atom("a");
        let taut = eval_formula(&u, &Formula::or(a.clone(), Formula::not(a.clone()))).unwrap();
        assert_eq!(taut, Proposition::all(&u));
        let contra = eval_formula(&u, &Formula::and(a.clone(), Formula::not(a))).unwrap();
        assert!(contra.is_empty());
    }

    #[test]
    fn implication_truth_table() {
        let u = Universe::enumerate(&["a", "b"]).unwrap();
        let p = eval_formula(&u, &Formula::implies(Formula::atom("a"), Formula::atom("b"))).unwrap();
        // only (a=true, b=false), world 2, falsifies a -> b
        assert_eq!(p.ids().collect::<Vec<_>>(), [0, 1, 3]);
    }

    #[test]
    fn unknown_atom_in_formula() {
        let u = Universe::enumerate(&["a"]).unwrap();
        assert_eq!(
            eval_formula(&u, &Formula::atom("q")).unwrap_err(),
            Error::UnknownAtom("q".into())
        );
    }

    #[test]
    fn partitions() {
        let u = Universe::enumerate(&["a", "b"]).unwrap();
        let p = eval_formula(&u, &Formula::atom("a")).unwrap();
        assert!(is_partition(&u, &[p.clone(), p.complement()]));
        assert!(is_partition(&u, &[Proposition::all(&u)]));
        assert!(!is_partition(&u, &[p.clone(), p.clone()]));
        assert!(!is_partition(&u, &[p]));
    }

    #[test]
    fn proposition_ids_must_exist() {
        let u = Universe::of_size(3);
        assert_eq!(Proposition::from_ids(&u, [3]).unwrap_err(), Error::UnknownWorld(3));
    }
}
