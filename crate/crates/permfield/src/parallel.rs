//! Data-parallel versions of the core drivers. Results are merged in the same
//! order as the sequential versions, so output does not depend on the pool size.

use permfield_core::families::{EnumLimits, Enumeration, FamilyId, FamilySweep, UnitResult};
use permfield_core::mols::{are_orthogonal, LatinSquare, MolsReport, MolsSet};
use permfield_core::{PrimePower, Result};
use rayon::prelude::*;

pub fn enumerate_family_par(family: FamilyId, sub: PrimePower, limits: &EnumLimits, verify: bool) -> Result<Enumeration> {
    let sweep = FamilySweep::new(family, sub, limits, verify)?;
    let results: Vec<UnitResult> = (0..sweep.units()).into_par_iter().map(|i| sweep.run_unit(i)).collect();
    Ok(sweep.finish(results))
}

pub fn verify_mols_par(set: &MolsSet) -> MolsReport {
    let sq = set.squares();
    let latin: Vec<bool> = sq.par_iter().map(LatinSquare::is_latin).collect();
    let pairs: Vec<(usize, usize)> = (0..sq.len()).flat_map(|i| (i + 1..sq.len()).map(move |j| (i, j))).collect();
    let failing_pair = pairs
        .par_iter()
        .copied()
        .find_first(|&(i, j)| !are_orthogonal(&sq[i], &sq[j]).expect("orders checked by MolsSet"));
    MolsReport::from_parts(set.order(), &latin, failing_pair)
}

/// Runs `f` on a dedicated pool with `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build()?;
    Ok(pool.install(f))
}
