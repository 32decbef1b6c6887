use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::freewords::Params;

/// CRT witnesses for the moduli `r_j^2`: `t_i ≡ δ_ij (mod r_j^2)` and
/// `t_i + r_j^2 s_ij = δ_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtData {
    pub t: Vec<BigInt>,
    /// `s[i][j]`
    pub s: Vec<Vec<BigInt>>,
}

pub fn crt_coefficients(params: &Params) -> Result<CrtData> {
    let moduli: Vec<BigInt> = params.r().iter().map(|&r| BigInt::from(r) * r).collect();
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            if !moduli[i].gcd(&moduli[j]).is_one() {
                return Err(Error::param(format!(
                    "r[{i}]={} and r[{j}]={} not coprime",
                    params.r()[i],
                    params.r()[j]
                )));
            }
        }
    }
    let total: BigInt = moduli.iter().product();
    let t: Vec<BigInt> = moduli
        .iter()
        .map(|m| {
            let cofactor = &total / m;
            // cofactor * inv ≡ 1 (mod m)
            let eg = cofactor.extended_gcd(m);
            debug_assert!(eg.gcd.is_one());
            (cofactor * eg.x).mod_floor(&total)
        })
        .collect();
    let s = t
        .iter()
        .enumerate()
        .map(|(i, ti)| {
            moduli
                .iter()
                .enumerate()
                .map(|(j, m)| {
                    let delta = if i == j { BigInt::one() } else { BigInt::zero() };
                    let (q, rem) = (delta - ti).div_rem(m);
                    debug_assert!(rem.is_zero());
                    q
                })
                .collect()
        })
        .collect();
    Ok(CrtData { t, s })
}
