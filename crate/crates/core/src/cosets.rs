//! Cyclotomic cosets of Z/NZ under multiplication by q², and the defining
//! sets (unions of cosets) that select the monomials of a BCH-type code.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::CosetError;
use crate::gf::gcd;

/// Partition of {0, …, N−1} into cyclotomic cosets w.r.t. q².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSystem {
    modulus: u32,
    q: u32,
    multiplier: u32,
    /// sorted by representative; each coset sorted ascending
    cosets: Vec<Vec<u32>>,
    reps: Vec<u32>,
    /// element -> coset position
    index: Vec<u32>,
}

impl CosetSystem {
    pub fn new(n: u32, q: u32) -> Result<Self, CosetError> {
        if n == 0 {
            return Err(CosetError::ZeroModulus);
        }
        if gcd(n as u64, q as u64) != 1 {
            return Err(CosetError::NotCoprime { n: n as u64, q: q as u64 });
        }
        let multiplier = ((q as u64 * q as u64) % n as u64) as u32;
        let mut index = vec![u32::MAX; n as usize];
        let mut cosets = Vec::new();
        let mut reps = Vec::new();
        for e in 0..n {
            if index[e as usize] != u32::MAX {
                continue;
            }
            // e is the least element of its orbit since smaller ones were already claimed
            let pos = cosets.len() as u32;
            let mut orbit = Vec::new();
            let mut x = e;
            loop {
                index[x as usize] = pos;
                orbit.push(x);
                x = ((x as u64 * multiplier as u64) % n as u64) as u32;
                if x == e {
                    break;
                }
            }
            orbit.sort_unstable();
            reps.push(e);
            cosets.push(orbit);
        }
        Ok(CosetSystem {
            modulus: n,
            q,
            multiplier,
            cosets,
            reps,
            index,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// q² mod N
    pub fn multiplier(&self) -> u32 {
        self.multiplier
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Number of cosets other than {0}.
    pub fn nonzero_count(&self) -> usize {
        self.cosets.len() - 1
    }

    /// Ordered representatives a₀ = 0 < a₁ < …
    pub fn representatives(&self) -> &[u32] {
        &self.reps
    }

    pub fn cosets(&self) -> &[Vec<u32>] {
        &self.cosets
    }

    /// The coset at position `i` (position 0 is {0}).
    pub fn coset(&self, i: usize) -> &[u32] {
        &self.cosets[i]
    }

    /// Position of the coset containing `e mod N`.
    pub fn position_of(&self, e: u64) -> usize {
        self.index[(e % self.modulus as u64) as usize] as usize
    }

    /// Representative of the coset containing `e mod N`.
    pub fn representative_of(&self, e: u64) -> u32 {
        self.reps[self.position_of(e)]
    }

    /// Position of the coset whose representative is `rep`.
    pub fn position_of_rep(&self, rep: u32) -> Option<usize> {
        self.reps.binary_search(&rep).ok()
    }

    /// The coset Λ_a with representative `a`.
    pub fn coset_of_rep(&self, a: u32) -> Option<&[u32]> {
        self.position_of_rep(a).map(|i| self.cosets[i].as_slice())
    }
}

/// A union of cyclotomic cosets, optionally including Λ₀ = {0}.
#[derive(Clone, PartialEq, Eq)]
pub struct DefiningSet {
    system: Arc<CosetSystem>,
    /// sorted positions of the nonzero cosets included
    rep_indices: Vec<usize>,
    elements: Vec<u32>,
    includes_zero: bool,
}

impl fmt::Debug for DefiningSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DefiningSet")
            .field("modulus", &self.system.modulus)
            .field("reps", &self.representatives())
            .field("includes_zero", &self.includes_zero)
            .finish()
    }
}

impl DefiningSet {
    /// Λ_{a₁} ∪ … ∪ Λ_{a_τ}, with Λ₀ prepended when `include_zero`.
    pub fn prefix(system: Arc<CosetSystem>, tau: usize, include_zero: bool) -> Result<Self, CosetError> {
        let max = system.nonzero_count();
        if tau == 0 || tau > max {
            return Err(CosetError::IndexOutOfRange { index: tau, max });
        }
        Ok(Self::from_positions(system, (1..=tau).collect(), include_zero))
    }

    /// Union of the cosets whose (nonzero) representatives are listed.
    pub fn from_representatives(
        system: Arc<CosetSystem>,
        reps: &[u32],
        include_zero: bool,
    ) -> Result<Self, CosetError> {
        let mut positions = Vec::with_capacity(reps.len());
        for &r in reps {
            match system.position_of_rep(r) {
                Some(i) if i > 0 => positions.push(i),
                _ => return Err(CosetError::NotARepresentative(r as u64)),
            }
        }
        positions.sort_unstable();
        positions.dedup();
        Ok(Self::from_positions(system, positions, include_zero))
    }

    fn from_positions(system: Arc<CosetSystem>, rep_indices: Vec<usize>, includes_zero: bool) -> Self {
        let mut elements = Vec::new();
        if includes_zero {
            elements.push(0);
        }
        for &i in &rep_indices {
            elements.extend_from_slice(system.coset(i));
        }
        DefiningSet {
            system,
            rep_indices,
            elements,
            includes_zero,
        }
    }

    pub fn system(&self) -> &Arc<CosetSystem> {
        &self.system
    }

    pub fn modulus(&self) -> u32 {
        self.system.modulus()
    }

    /// Exponents, coset by coset in representative order.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn includes_zero(&self) -> bool {
        self.includes_zero
    }

    pub fn contains(&self, e: u32) -> bool {
        if e >= self.modulus() {
            return false;
        }
        let pos = self.system.position_of(e as u64);
        if pos == 0 {
            self.includes_zero
        } else {
            self.rep_indices.binary_search(&pos).is_ok()
        }
    }

    /// Positions of the included nonzero cosets.
    pub fn rep_indices(&self) -> &[usize] {
        &self.rep_indices
    }

    /// Representatives of the included nonzero cosets, ascending.
    pub fn representatives(&self) -> Vec<u32> {
        self.rep_indices.iter().map(|&i| self.system.representatives()[i]).collect()
    }

    /// Number of nonzero cosets included (τ for a prefix set).
    pub fn tau(&self) -> usize {
        self.rep_indices.len()
    }

    /// True when the nonzero cosets are exactly Λ_{a₁}, …, Λ_{a_τ}.
    pub fn is_prefix(&self) -> bool {
        self.rep_indices.iter().enumerate().all(|(k, &i)| i == k + 1)
    }

    /// Largest nonzero representative included (a'_{τ'} after reduction).
    pub fn max_representative(&self) -> Option<u32> {
        self.rep_indices.last().map(|&i| self.system.representatives()[i])
    }

    /// Σ #Λ over the included nonzero cosets.
    pub fn nonzero_size(&self) -> usize {
        self.rep_indices.iter().map(|&i| self.system.coset(i).len()).sum()
    }

    /// Smallest nonzero representative whose coset is absent; a_{τ+1} for a
    /// prefix set.
    pub fn next_representative(&self) -> Result<u32, CosetError> {
        let reps = self.system.representatives();
        (1..reps.len())
            .find(|i| self.rep_indices.binary_search(i).is_err())
            .map(|i| reps[i])
            .ok_or(CosetError::Exhausted)
    }

    /// The set {e mod n1 : e ∈ Δ}, as a union of cosets modulo `n1`.
    pub fn reduce_mod(&self, n1: u32) -> Result<DefiningSet, CosetError> {
        let n = self.modulus();
        if n1 == 0 || !n.is_multiple_of(n1) {
            return Err(CosetError::NotADivisor {
                n1: n1 as u64,
                n: n as u64,
            });
        }
        let target = Arc::new(CosetSystem::new(n1, self.system.q())?);
        self.reduce_into(target)
    }

    /// As [`reduce_mod`](Self::reduce_mod), reusing an existing coset system.
    pub fn reduce_into(&self, target: Arc<CosetSystem>) -> Result<DefiningSet, CosetError> {
        let n1 = target.modulus();
        if !self.modulus().is_multiple_of(n1) {
            return Err(CosetError::NotADivisor {
                n1: n1 as u64,
                n: self.modulus() as u64,
            });
        }
        let mut image = vec![false; n1 as usize];
        for &e in &self.elements {
            image[(e % n1) as usize] = true;
        }
        let mut positions: Vec<usize> = image
            .iter()
            .enumerate()
            .filter(|&(_, &hit)| hit)
            .map(|(r, _)| target.position_of(r as u64))
            .collect();
        positions.sort_unstable();
        positions.dedup();
        for &pos in &positions {
            if let Some(&missing) = target.coset(pos).iter().find(|&&x| !image[x as usize]) {
                return Err(CosetError::NotCosetClosed(missing as u64));
            }
        }
        let includes_zero = image[0];
        positions.retain(|&p| p != 0);
        Ok(Self::from_positions(target, positions, includes_zero))
    }
}

/// Serializable summary of a defining set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningSetSummary {
    pub modulus: u32,
    pub representatives: Vec<u32>,
    pub includes_zero: bool,
    pub size: usize,
}

impl From<&DefiningSet> for DefiningSetSummary {
    fn from(d: &DefiningSet) -> Self {
        DefiningSetSummary {
            modulus: d.modulus(),
            representatives: d.representatives(),
            includes_zero: d.includes_zero(),
            size: d.len(),
        }
    }
}

/// Serializable listing of a coset system; each coset starts with its
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetListing {
    pub modulus: u32,
    pub q: u32,
    pub multiplier: u32,
    pub cosets: Vec<Vec<u32>>,
}

impl From<&CosetSystem> for CosetListing {
    fn from(c: &CosetSystem) -> Self {
        CosetListing {
            modulus: c.modulus(),
            q: c.q(),
            multiplier: c.multiplier(),
            cosets: c.cosets().to_vec(),
        }
    }
}
