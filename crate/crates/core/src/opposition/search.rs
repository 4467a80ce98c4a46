use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{common_ambient, Result, Witness};
use crate::numeric::{Subspace, Tolerance};
use crate::quantum::{Atom, Proposition, State};
use crate::sampling::random_unit_vector_in;

/// Atom count above which only single-atom strata are sampled.
const MAX_STRATA_ATOMS: usize = 10;

/// Seeded search for a state realizing `pattern` over `props`.
///
/// States are Haar-random inside strata: the whole space and the
/// intersection of every nonempty subset of atom subspaces. A pattern that
/// needs some atoms to hold can only be met inside their intersection, which
/// is a null set for ambient sampling, so each stratum gets its own draws
/// (round-robin over `trials`). Intersections are computed as
/// `(S⊥ ∨ T⊥ ∨ …)⊥`, a route independent of the eigensolver.
pub fn random_witness_search(
    props: &[&Proposition],
    pattern: &[bool],
    seed: u64,
    trials: usize,
    eps: Tolerance,
) -> Result<Option<Witness>> {
    if props.len() != pattern.len() {
        return Err(super::OppositionError::PatternLength { pattern: pattern.len(), props: props.len() });
    }
    let dim = common_ambient(props)?;
    if dim == 0 {
        return Ok(None);
    }
    let mut atoms: Vec<&Atom> = Vec::new();
    for p in props {
        for a in p.atoms() {
            if !atoms.iter().any(|b| b.family == a.family && b.name == a.name) {
                atoms.push(a);
            }
        }
    }
    let strata = strata(dim, &atoms, eps)?;
    let normalized: Vec<Proposition> = props.iter().map(|p| p.normalized()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let stratum = &strata[t % strata.len()];
        let Some(v) = random_unit_vector_in(&mut rng, stratum) else { continue };
        let state = State::new(v, eps)?;
        let mut hit = true;
        for (p, want) in normalized.iter().zip(pattern) {
            if p.truth(&state, eps)? != *want {
                hit = false;
                break;
            }
        }
        if hit {
            return Ok(Some(Witness { state, pattern: pattern.to_vec() }));
        }
    }
    Ok(None)
}

fn strata(dim: usize, atoms: &[&Atom], eps: Tolerance) -> Result<Vec<Subspace>> {
    let mut out = vec![Subspace::full(dim)?];
    let masks: Vec<Vec<usize>> = if atoms.len() <= MAX_STRATA_ATOMS {
        (1u32..(1 << atoms.len())).map(|mask| (0..atoms.len()).filter(|i| mask & (1 << i) != 0).collect()).collect()
    } else {
        (0..atoms.len()).map(|i| vec![i]).collect()
    };
    for subset in masks {
        let mut complements = Subspace::zero(dim)?;
        for &i in &subset {
            complements = complements.join(&atoms[i].subspace.orthocomplement(), eps)?;
        }
        let meet = complements.orthocomplement();
        if !meet.is_zero() {
            out.push(meet);
        }
    }
    Ok(out)
}
