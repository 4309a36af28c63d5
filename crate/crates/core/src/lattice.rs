//! The full subspace lattice of `F_q^n` with precomputed index tables.
//!
//! A [`Lattice`] is shared (via `Arc`) by every rank table on the same ground
//! space. Join and orthogonal-complement tables are computed once; meets are
//! derived as `orth(join(orth a, orth b))`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::field::Field;
use crate::subspace::{count_subspaces, enumerate_subspaces, Subspace};
use crate::Result;

pub struct Lattice {
    field: Field,
    ambient: usize,
    subspaces: Vec<Subspace>,
    index: HashMap<Vec<u32>, usize>,
    orth: Vec<usize>,
    join: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice({} ^ {}, {} subspaces)", self.field, self.ambient, self.subspaces.len())
    }
}

type Cache = Mutex<HashMap<(Field, usize), Arc<Lattice>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl Lattice {
    /// Returns the (cached) lattice of `F_q^n`, refusing when it has more
    /// than `guard` elements.
    pub fn of(field: &Field, n: usize, guard: u128) -> Result<Arc<Lattice>> {
        let count = Self::size(field, n);
        if count > guard {
            return Err(crate::Error::GuardExceeded { what: "subspaces", count, limit: guard });
        }
        let key = (field.clone(), n);
        if let Some(l) = cache().lock().unwrap().get(&key) {
            return Ok(l.clone());
        }
        let subspaces = enumerate_subspaces(field, n, None, guard)?;
        let index: HashMap<Vec<u32>, usize> =
            subspaces.iter().enumerate().map(|(i, s)| (s.key(), i)).collect();
        let orth = subspaces.iter().map(|s| index[&s.orth().key()]).collect();
        let lattice = Arc::new(Lattice {
            field: field.clone(),
            ambient: n,
            subspaces,
            index,
            orth,
            join: OnceLock::new(),
        });
        cache().lock().unwrap().insert(key, lattice.clone());
        Ok(lattice)
    }

    /// Size of the lattice without building it.
    pub fn size(field: &Field, n: usize) -> u128 {
        count_subspaces(field.order(), n, None)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        if s.ambient_dim() != self.ambient || s.field() != &self.field {
            return None;
        }
        self.index.get(&s.key()).copied()
    }

    pub fn full_index(&self) -> usize {
        self.subspaces.len() - 1
    }

    pub fn orth_index(&self, i: usize) -> usize {
        self.orth[i]
    }

    fn join_table(&self) -> &[u32] {
        self.join.get_or_init(|| {
            let n = self.subspaces.len();
            let mut table = vec![0u32; n * n];
            for a in 0..n {
                table[a * n + a] = a as u32;
                for b in a + 1..n {
                    let s = self.subspaces[a].sum(&self.subspaces[b]).expect("same lattice");
                    let j = self.index[&s.key()] as u32;
                    table[a * n + b] = j;
                    table[b * n + a] = j;
                }
            }
            table
        })
    }

    pub fn join_index(&self, a: usize, b: usize) -> usize {
        self.join_table()[a * self.subspaces.len() + b] as usize
    }

    pub fn meet_index(&self, a: usize, b: usize) -> usize {
        self.orth[self.join_index(self.orth[a], self.orth[b])]
    }

    pub fn is_subspace_of(&self, a: usize, b: usize) -> bool {
        self.join_index(a, b) == b
    }
}
