use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::{fn_closed, fn_preimage};
use crate::error::{Error, Result};
use crate::homk::{certify_equivalent, is_contractible, HomotopyWitnessN};
use crate::morcat::{functor_eup, functor_u, mor_two_n_gon, MorComplex, MorSubcatLabel};
use crate::ncomplex::{ChainMapN, NComplex};
use crate::nfunctors::{contract_iter, contract_j, prolong_i, prolong_iter, tstructure_decompose, SubcatFSR};
use crate::sample::{random_mor_in, trial_seed, Rng64};

/// Where `F_N` sends each subcategory of the Mor 2N-gon.
pub fn target_of(label: MorSubcatLabel, n: usize) -> Result<SubcatFSR> {
    label.check(n)?;
    let m = n - 1;
    let (s, r) = match label {
        MorSubcatLabel::F(1, t) if t == m => (1, n - 2),
        MorSubcatLabel::EUpper => (0, 1),
        MorSubcatLabel::E(s) => (s as i64 + 1, n - 2),
        MorSubcatLabel::F(s, t) if t == s + 1 => (s as i64, 1),
        MorSubcatLabel::ELower => (m as i64, 1),
        MorSubcatLabel::F(..) => return Err(Error::OutOfRange(format!("{label} is not a vertex of the 2N-gon"))),
    };
    SubcatFSR::new(n, s, r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GonTransportRow {
    pub source: MorSubcatLabel,
    pub target: SubcatFSR,
    pub samples: usize,
    pub passes: usize,
    /// Trial indices that failed.
    pub failures: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GonTransportReport {
    pub n: usize,
    pub p: u32,
    pub seed: u64,
    pub rows: Vec<GonTransportRow>,
}

impl GonTransportReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passes == r.samples)
    }
}

/// `F_N(X) ∈ F_s^r` up to homotopy: the complementary part of the t-structure triangle is
/// contractible.
pub fn in_fsr_certified(y: &NComplex, target: SubcatFSR) -> bool {
    match tstructure_decompose(y, target.s, target.r) {
        Ok(d) => d.is_certified() && is_contractible(&d.v_part).is_some(),
        Err(_) => false,
    }
}

/// Sample members of each Mor subcategory and check that their images land in the matching
/// subcategory of `K_N`.
pub fn verify_gon_transport(n: usize, p: u32, trials: usize, seed: u64) -> Result<GonTransportReport> {
    if n < 3 {
        return Err(Error::OutOfRange(format!("the 2N-gon needs N >= 3, got {n}")));
    }
    let mut rows = Vec::new();
    for (k, label) in mor_two_n_gon(n).into_iter().enumerate() {
        let target = target_of(label, n)?;
        let mut failures = Vec::new();
        for t in 0..trials {
            let mut rng = Rng64::seed_from_u64(trial_seed(seed, &format!("gon-transport/{k}"), t as u64));
            let x = random_mor_in(&mut rng, n, p, label, 2);
            if !in_fsr_certified(&fn_closed(&x), target) {
                failures.push(t);
            }
        }
        rows.push(GonTransportRow {
            source: label,
            target,
            samples: trials,
            passes: trials - failures.len(),
            failures,
        });
    }
    Ok(GonTransportReport { n, p, seed, rows })
}

type Certified = Option<(ChainMapN, HomotopyWitnessN)>;

/// `F_N U_{N-1} Z ≃ I_1^⇑ Z'` for an ordinary complex `Z`, where `Z'^i = Z^{i-1}`: a Mor object
/// in complex degree 0 occupies N-complex degrees `1..=N-1`.
pub fn upper_restriction_square(z: &NComplex, n: usize) -> Result<Certified> {
    let x = functor_u(z, n)?;
    Ok(certify_equivalent(&fn_closed(&x), &prolong_iter(1, n, &z.reindex(-1))?))
}

/// For `Y ∈ F_1^{N-2}`: `Z` with `Z^i = (J_1^⇓ Y)^{i+1}` satisfies `F_N U_{N-1} Z ≃ Y`.
pub fn upper_restriction_hit(y: &NComplex) -> Result<Certified> {
    let z = contract_iter(1, 2, y)?.reindex(1);
    let x = functor_u(&z, y.n())?;
    Ok(certify_equivalent(&fn_closed(&x), y))
}

/// `F_N E^⇑ W ≃ I_0 F_{N-1} W` for a complex `W` over `Mor^sm_{N-2}`.
pub fn lower_restriction_square(w: &MorComplex, n: usize) -> Result<Certified> {
    let x = functor_eup(w, n)?;
    Ok(certify_equivalent(&fn_closed(&x), &prolong_i(0, &fn_closed(w))))
}

/// For `Y ∈ F_0^1`: a preimage `G` of `J_0 Y` under `F_{N-1}` satisfies `F_N E^⇑ G ≃ Y`.
pub fn lower_restriction_hit(y: &NComplex) -> Result<Certified> {
    let n = y.n();
    if n < 3 {
        return Err(Error::OutOfRange(format!("needs N >= 3, got {n}")));
    }
    let g = fn_preimage(&contract_j(0, y)?)?;
    let x = functor_eup(&g, n)?;
    Ok(certify_equivalent(&fn_closed(&x), y))
}
