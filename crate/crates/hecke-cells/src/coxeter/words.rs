use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::{CoxeterSystem, Gen};
use crate::error::{Error, Result};

/// Braid-closure word problem with an explicit memo store.
///
/// Two reduced words represent the same element iff they are connected by
/// braid moves, and a word is reduced iff no word in its braid class has two
/// equal adjacent letters.
#[derive(Clone, Debug)]
pub struct WordProblem {
    system: CoxeterSystem,
    cap: usize,
    cache: HashMap<Vec<Gen>, Arc<Vec<Vec<Gen>>>>,
}

impl WordProblem {
    pub fn new(system: &CoxeterSystem, cap: usize) -> Self {
        WordProblem { system: system.clone(), cap, cache: HashMap::new() }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// All words reachable by braid moves, sorted lexicographically.
    pub fn braid_class(&mut self, word: &[Gen]) -> Result<Arc<Vec<Vec<Gen>>>> {
        if let Some(c) = self.cache.get(word) {
            return Ok(c.clone());
        }
        let mut seen: HashSet<Vec<Gen>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        while let Some(w) = queue.pop_front() {
            for next in self.braid_moves(&w) {
                if seen.insert(next.clone()) {
                    if seen.len() > self.cap {
                        return Err(Error::ClassTooLarge(self.cap));
                    }
                    queue.push_back(next);
                }
            }
        }
        let mut class: Vec<Vec<Gen>> = seen.into_iter().collect();
        class.sort();
        let class = Arc::new(class);
        for w in class.iter() {
            self.cache.insert(w.clone(), class.clone());
        }
        Ok(class)
    }

    fn braid_moves(&self, w: &[Gen]) -> Vec<Vec<Gen>> {
        let mut out = Vec::new();
        for i in 0..w.len().saturating_sub(1) {
            let (s, t) = (w[i], w[i + 1]);
            if s == t {
                continue;
            }
            let Some(m) = self.system.m(s, t) else { continue };
            let m = m as usize;
            if i + m > w.len() {
                continue;
            }
            let alternating = (0..m).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
            if alternating {
                let mut next = w.to_vec();
                for k in 0..m {
                    next[i + k] = if k % 2 == 0 { t } else { s };
                }
                out.push(next);
            }
        }
        out
    }

    /// Position of an adjacent equal pair in some word of the class, with that word.
    fn find_square(&mut self, word: &[Gen]) -> Result<Option<(Vec<Gen>, usize)>> {
        let class = self.braid_class(word)?;
        for w in class.iter() {
            if let Some(i) = w.windows(2).position(|p| p[0] == p[1]) {
                return Ok(Some((w.clone(), i)));
            }
        }
        Ok(None)
    }

    pub fn is_reduced(&mut self, word: &[Gen]) -> Result<bool> {
        Ok(self.find_square(word)?.is_none())
    }

    /// ShortLex-least reduced word for the element represented by `word`.
    pub fn canonical(&mut self, word: &[Gen]) -> Result<Vec<Gen>> {
        let mut w = word.to_vec();
        while let Some((u, i)) = self.find_square(&w)? {
            w = u;
            w.drain(i..i + 2);
        }
        Ok(self.braid_class(&w)?[0].clone())
    }

    /// Equality of the represented elements.
    pub fn equal(&mut self, a: &[Gen], b: &[Gen]) -> Result<bool> {
        Ok(self.canonical(a)? == self.canonical(b)?)
    }
}
