use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::seed;

use super::instance_file::{InstanceFile, PlantedMeta};

/// Parameters of a planted-motif instance.
#[derive(Debug, Clone)]
pub struct PlantedParams {
    pub alphabet: Arc<Alphabet>,
    pub n: usize,
    pub m: usize,
    pub window: usize,
    pub d: usize,
    pub seed: u64,
}

/// Draws a random center of length `L` and `n` random strings of length `m`.
/// Each string receives a copy of the center with exactly `d` positions
/// changed to a different symbol, at a uniform offset. The optimal radius is
/// therefore at most `d`.
pub fn generate_planted(p: &PlantedParams) -> Result<InstanceFile> {
    let sigma = p.alphabet.size();
    if p.window == 0 || p.window > p.m {
        return Err(Error::Domain(format!("need 1 <= L <= m, got L = {} and m = {}", p.window, p.m)));
    }
    if p.d > p.window {
        return Err(Error::Domain(format!("d = {} exceeds L = {}", p.d, p.window)));
    }
    if p.n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut rng = seed::rng(p.seed);
    let center: Vec<u8> = (0..p.window).map(|_| rng.gen_range(0..sigma) as u8).collect();
    let mut strings = Vec::with_capacity(p.n);
    let mut offsets = Vec::with_capacity(p.n);
    for _ in 0..p.n {
        let mut s: Vec<u8> = (0..p.m).map(|_| rng.gen_range(0..sigma) as u8).collect();
        let mut motif = center.clone();
        for j in sample(&mut rng, p.window, p.d) {
            let shift = rng.gen_range(1..sigma) as u8;
            motif[j] = ((motif[j] as usize + shift as usize) % sigma) as u8;
        }
        let off = rng.gen_range(0..=p.m - p.window);
        s[off..off + p.window].copy_from_slice(&motif);
        strings.push(render(&p.alphabet, &s));
        offsets.push(off + 1);
    }
    Ok(InstanceFile {
        alphabet: p.alphabet.to_string(),
        strings,
        window: Some(p.window),
        planted: Some(PlantedMeta { center: render(&p.alphabet, &center), d: p.d, offsets }),
    })
}

fn render(a: &Alphabet, s: &[u8]) -> String {
    s.iter().map(|&c| a.symbol(c as usize).expect("index below alphabet size")).collect()
}
