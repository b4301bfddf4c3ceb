//! Deterministic sample points: one witness per face of an arrangement,
//! hand-picked points, and seeded random rationals.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::cohomology::{arrangement_witnesses, critical_radius};
use crate::geom::{AffineConstraint, Cell, PLSet};
use crate::rational::Rational;
use crate::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    Witness,
    User,
    Random,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SampleSet {
    points: Vec<Point>,
    provenance: Vec<Provenance>,
}

impl SampleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, p: Point, how: Provenance) {
        self.points.push(p);
        self.provenance.push(how);
    }

    pub fn extend(&mut self, ps: impl IntoIterator<Item = Point>, how: Provenance) {
        for p in ps {
            self.push(p, how);
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn count(&self, how: Provenance) -> usize {
        self.provenance.iter().filter(|&&p| p == how).count()
    }
}

/// FNV-1a, to give each scenario its own random stream.
pub fn name_hash(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ name_hash(name))
}

/// `p/q` with `q ∈ 1..=4` and `|p/q| ≤ 3`.
pub fn random_rational(rng: &mut impl RngCore) -> Rational {
    let q = 1 + (rng.next_u32() % 4) as i64;
    let span = 6 * q + 1;
    let p = (rng.next_u64() % span as u64) as i64 - 3 * q;
    Rational::new(p, q)
}

pub fn random_points(dim: usize, count: usize, rng: &mut impl RngCore) -> Vec<Point> {
    (0..count).map(|_| (0..dim).map(|_| random_rational(rng)).collect()).collect()
}

/// One point in the relative interior of every face of the arrangement of
/// `hyperplanes`, inside a box large enough to meet all of them.
pub fn face_witnesses(dim: usize, hyperplanes: &[AffineConstraint]) -> Vec<Point> {
    if dim == 0 {
        return alloc::vec![Vec::new()];
    }
    let cells: Vec<Cell> =
        hyperplanes.iter().filter_map(|h| Cell::new(dim, alloc::vec![h.clone()]).ok().flatten()).collect();
    let r = critical_radius(&PLSet::from_cells(dim, cells).expect("dimensions agree"));
    let mut walls = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut e = alloc::vec![Rational::zero(); dim];
        e[i] = Rational::one();
        walls.push(AffineConstraint::le(e.clone(), r.clone()));
        walls.push(AffineConstraint::ge(e, -&r));
    }
    let bx = Cell::new(dim, walls).expect("dimensions agree").expect("box is nonempty");
    arrangement_witnesses(&bx, hyperplanes)
}

/// Face witnesses of `hyperplanes`, then `user`, then `random` seeded points.
pub fn sample_set(
    dim: usize,
    hyperplanes: &[AffineConstraint],
    user: Vec<Point>,
    random: usize,
    seed: u64,
    name: &str,
) -> SampleSet {
    let mut s = SampleSet::new();
    s.extend(face_witnesses(dim, hyperplanes), Provenance::Witness);
    s.extend(user, Provenance::User);
    let mut rng = stream(seed, name);
    s.extend(random_points(dim, random, &mut rng), Provenance::Random);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn random_points_are_deterministic_and_bounded() {
        let a = random_points(3, 50, &mut stream(42, "x"));
        let b = random_points(3, 50, &mut stream(42, "x"));
        let c = random_points(3, 50, &mut stream(42, "y"));
        assert_eq!(a, b);
        assert_ne!(a, c);
        for p in &a {
            for x in p {
                assert!(x.abs() <= qi(3));
                assert!(x.denom() <= 4.into());
            }
        }
    }

    #[test]
    fn witnesses_cover_every_face() {
        // Two crossing lines in the plane: 1 vertex, 4 rays, 4 sectors.
        let h = [
            AffineConstraint::eq(alloc::vec![qi(1), qi(0)], qi(0)),
            AffineConstraint::eq(alloc::vec![qi(0), qi(1)], qi(0)),
        ];
        assert_eq!(face_witnesses(2, &h).len(), 9);
        // No hyperplanes: one face.
        assert_eq!(face_witnesses(2, &[]).len(), 1);
        // Three parallel points on a line: 3 points, 4 intervals.
        let h: Vec<_> = [-1, 0, 1].iter().map(|&b| AffineConstraint::eq(alloc::vec![qi(1)], qi(b))).collect();
        assert_eq!(face_witnesses(1, &h).len(), 7);
    }
}
