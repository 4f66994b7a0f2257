use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::{Clopen, GroundSet, Neighborhood, Universe};
use crate::upset::UpSet;

/// Seeded source of random sets. Each criterion draws from its own stream
/// so that adding draws to one criterion leaves the others unchanged.
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Gen { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn bits(&mut self, len: u64, density: f64) -> Vec<u64> {
        (0..len).filter(|_| self.rng.gen_bool(density)).collect()
    }

    /// A set with threshold below `max_t` and period at most `max_p`.
    pub fn upset(&mut self, max_t: u64, max_p: u64) -> UpSet {
        let t = self.rng.gen_range(0..=max_t);
        let p = self.rng.gen_range(1..=max_p);
        let density = self.rng.gen_range(0.2..0.8);
        let residues = self.bits(p, density);
        let transient = self.bits(t, density);
        UpSet::from_residues(p, &residues, t, &transient).expect("fields are in range")
    }

    pub fn infinite_upset(&mut self, max_t: u64, max_p: u64) -> UpSet {
        loop {
            let s = self.upset(max_t, max_p);
            if s.is_infinite() {
                return s;
            }
        }
    }

    pub fn finite_upset(&mut self, max_elem: u64, max_len: usize) -> UpSet {
        let len = self.rng.gen_range(0..=max_len);
        UpSet::from_elements((0..len).map(|_| self.rng.gen_range(0..max_elem)))
            .expect("small elements")
    }

    /// Mostly infinite sets, with the occasional finite or cofinite one.
    pub fn constraint_set(&mut self) -> UpSet {
        match self.below(10) {
            0 => self.finite_upset(12, 4),
            1 => self.finite_upset(12, 3).complement(),
            _ => self.upset(6, 6),
        }
    }

    /// A basic clopen set over ℕ with up to `max_pos` and `max_neg` constraints.
    pub fn nat_clopen(&mut self, max_pos: usize, max_neg: usize) -> Clopen {
        let np = self.rng.gen_range(0..=max_pos);
        let nn = self.rng.gen_range(0..=max_neg);
        let pos: Vec<GroundSet> = (0..np).map(|_| self.constraint_set().into()).collect();
        let neg: Vec<GroundSet> = (0..nn).map(|_| self.constraint_set().into()).collect();
        Neighborhood::make(Universe::Nat, pos, neg).expect("one universe")
    }

    /// A random subset of `items`, order preserved.
    pub fn subset<T: Clone>(&mut self, items: &[T], p: f64) -> Vec<T> {
        items.iter().filter(|_| self.rng.gen_bool(p)).cloned().collect()
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }
}
