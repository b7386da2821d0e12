//! The named identity suites run by `verify`.

use clap::ValueEnum;

use crate::error::{KhopfError, Result};
use crate::exactpoly::TruncationContext;
use crate::peakalg;
use crate::qsymbases::k_antipode_check;
use crate::shapes::strict_partitions_upto;
use crate::shiftedsym::{
    antipode_identity_check, cauchy_check, duality_check, gpn_check, kcoeff_expansion_check, theta_grothendieck_check,
    ttheta_check, AntipodeFamily, DualityCheck, IdentityReport,
};
use crate::wordalg::{bigmr_bialgebra_check, mmr_bialgebra_check, mr_duality_check, word_morphism_check, Zeta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    /// Dual pairings between the shifted families and between multipeak and peak functions.
    Duality,
    /// The Cauchy identity for GP/gq and GQ/gp.
    Cauchy,
    /// Antipode identities for shifted families, peak generators and K.
    Antipode,
    /// The map Theta on Grothendieck functions, and related expansions.
    Theta,
    /// Products, coproducts and antipodes of the multipeak algebras.
    PeakProducts,
    /// Bialgebra laws of the word Hopf algebras and their morphisms to QSym.
    WordHopf,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::Cauchy => "cauchy",
            Suite::Antipode => "antipode",
            Suite::Theta => "theta",
            Suite::PeakProducts => "peak-products",
            Suite::WordHopf => "word-hopf",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        <Suite as ValueEnum>::from_str(s, false).map_err(|_| KhopfError::Parse(format!("unknown suite {s:?}")))
    }
}

/// Random trials in the `peak-products` suite.
const RANDOM_TRIALS: usize = 12;

/// Run `suite` at `bound`. The result depends only on the arguments.
pub fn run_suite(suite: Suite, bound: u32, ctx: TruncationContext, seed: u64) -> Result<Vec<IdentityReport>> {
    let b = bound as usize;
    Ok(match suite {
        Suite::Duality => vec![
            duality_check(DualityCheck::GpGQ, bound, ctx)?,
            duality_check(DualityCheck::GqGP, bound, ctx)?,
            duality_check(DualityCheck::SmallGG, bound, ctx)?,
            peakalg::pairing_check(bound, ctx)?,
        ],
        Suite::Cauchy => vec![cauchy_check(b, b, b, b)?],
        Suite::Antipode => {
            let mut out = Vec::new();
            for fam in AntipodeFamily::ALL {
                let mut rep = IdentityReport::new(format!("antipode identity for {}, |nu| <= {bound}", fam.name()));
                for nu in strict_partitions_upto(bound) {
                    rep.absorb(antipode_identity_check(fam, &nu, ctx)?);
                }
                out.push(rep);
            }
            out.push(peakalg::antipode_check(bound)?);
            out.push(k_antipode_check(bound, ctx)?);
            out
        }
        Suite::Theta => {
            let mut k = IdentityReport::new(format!("GQ via peak coefficients, |lambda| <= {bound}"));
            for lambda in strict_partitions_upto(bound) {
                k.absorb(kcoeff_expansion_check(&lambda, ctx)?);
            }
            vec![
                theta_grothendieck_check(bound, b, ctx)?,
                ttheta_check(bound, ctx)?,
                gpn_check(bound, ctx)?,
                k,
            ]
        }
        Suite::PeakProducts => vec![
            peakalg::conversion_check(bound)?,
            peakalg::associativity_check(bound + 2, bound)?,
            peakalg::product_duality_check(bound, ctx)?,
            peakalg::free_generation_check(bound)?,
            peakalg::peak_free_lemma_check(bound)?,
            peakalg::coproduct_check(bound)?,
            peakalg::antipode_check(bound)?,
            peakalg::realization_check(bound)?,
            peakalg::projection_check(bound, ctx)?,
            peakalg::random_element_check(bound, RANDOM_TRIALS, seed)?,
        ],
        Suite::WordHopf => vec![
            mmr_bialgebra_check(b, b)?,
            bigmr_bialgebra_check(b)?,
            mr_duality_check(b)?,
            word_morphism_check(Zeta::Lt, b, ctx)?,
            word_morphism_check(Zeta::Peak, b, ctx)?,
        ],
    })
}

/// The transcript printed by `verify`: every instance, then one summary per report.
pub fn transcript(suite: Suite, bound: u32, ctx: TruncationContext, reports: &[IdentityReport]) -> String {
    let mut s = format!("# verify {} --bound {bound} at {ctx}\n", suite.name());
    for r in reports {
        s.push_str(&format!("## {}\n", r.name));
        for d in &r.details {
            s.push_str(d);
            s.push('\n');
        }
        s.push_str(&r.summary());
        s.push('\n');
    }
    let checked: usize = reports.iter().map(|r| r.checked).sum();
    let failed: usize = reports.iter().map(|r| r.failures.len()).sum();
    let status = if failed == 0 { "ok" } else { "FAIL" };
    s.push_str(&format!("verify {}: {status} ({checked} instances, {failed} failures)\n", suite.name()));
    s
}
