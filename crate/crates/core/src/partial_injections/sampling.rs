use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{CountCache, PartialInjection};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Component {
    Sequence,
    Cycle,
}

/// Size and kind of the component holding the marked element, among `m`
/// remaining elements.
///
/// A sequence of size `k` has weight `C(m−1,k−1)·k!·I_{m−k}` and a cycle
/// `C(m−1,k−1)·(k−1)!·I_{m−k}`; both share the factor
/// `F_k = (m−1)!/(m−k)!`. The weights sum to `I_m`.
fn draw_component<R: Rng + ?Sized>(m: usize, cache: &CountCache, rng: &mut R) -> (usize, Component) {
    let mut x = rng.gen_biguint_below(cache.i(m));
    let mut falling = BigUint::one();
    for k in 1..=m {
        if k > 1 {
            falling *= (m - k + 1) as u64;
        }
        let base = &falling * cache.i(m - k);
        let seq = &base * k as u64;
        if x < seq {
            return (k, Component::Sequence);
        }
        x -= seq;
        if x < base {
            return (k, Component::Cycle);
        }
        x -= base;
    }
    unreachable!("component weights sum to I_m")
}

/// Uniform partial injection on `{0..n}` by the recursive method.
///
/// The component containing the smallest unplaced element gets a size and
/// kind drawn with exact integer weights; its other members are a uniform
/// subset of the remaining elements, arranged in a uniform linear order
/// (sequence) or uniform cyclic order (cycle).
pub fn uniform_partial_injection<R: Rng + ?Sized>(
    n: usize,
    cache: &CountCache,
    rng: &mut R,
) -> Result<PartialInjection> {
    cache.ensure(n)?;
    let mut f = PartialInjection::empty(n);
    // ascending, so pool[0] is the marked element
    let mut pool: Vec<usize> = (0..n).collect();
    while !pool.is_empty() {
        let m = pool.len();
        let (k, kind) = draw_component(m, cache, rng);
        let mut chosen = vec![false; m];
        chosen[0] = true;
        let mut members = Vec::with_capacity(k);
        members.push(pool[0]);
        for i in index::sample(rng, m - 1, k - 1).into_iter() {
            chosen[i + 1] = true;
            members.push(pool[i + 1]);
        }
        match kind {
            Component::Sequence => {
                members.shuffle(rng);
                for w in members.windows(2) {
                    f.insert(w[0], w[1])?;
                }
            }
            Component::Cycle => {
                members[1..].shuffle(rng);
                for i in 0..k {
                    f.insert(members[i], members[(i + 1) % k])?;
                }
            }
        }
        let mut next = Vec::with_capacity(m - k);
        next.extend(
            pool.iter()
                .zip(&chosen)
                .filter(|(_, &c)| !c)
                .map(|(&x, _)| x),
        );
        pool = next;
    }
    Ok(f)
}

/// Uniform permutation of `{0..n}` as a total partial injection.
pub fn uniform_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PartialInjection {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    let map: Vec<Option<usize>> = images.into_iter().map(Some).collect();
    PartialInjection::from_map(&map).expect("a permutation is injective")
}
