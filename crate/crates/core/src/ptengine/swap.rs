use rand::Rng;

use super::TemperatureLadder;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(repetition: u64) -> Self {
        if repetition.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn first(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Replica-exchange acceptance for the states at slots `i` and `i+1`:
/// `min(1, exp((beta_i - beta_j) * (e_i - e_j)))`.
pub fn swap_probability(beta_i: f64, beta_j: f64, e_i: f64, e_j: f64) -> f64 {
    ((beta_i - beta_j) * (e_i - e_j)).exp().min(1.0)
}

/// Attempts exchanges between slots `(i, i+1)` for every `i` of the given
/// parity. `slots[s]` is the replica currently at slot `s`; `energy(r)` is
/// replica `r`'s score. Returns the number of accepted exchanges.
pub fn swap_phase<R: Rng + ?Sized>(
    slots: &mut [usize],
    energy: impl Fn(usize) -> f64,
    ladder: &mut TemperatureLadder,
    parity: Parity,
    rng: &mut R,
) -> usize {
    debug_assert_eq!(slots.len(), ladder.len());
    let mut accepted = 0;
    let mut i = parity.first();
    while i + 1 < slots.len() {
        let (a, b) = (slots[i], slots[i + 1]);
        let p = swap_probability(ladder.beta(i), ladder.beta(i + 1), energy(a), energy(b));
        let ok = p >= 1.0 || rng.gen::<f64>() < p;
        ladder.record(i, ok);
        if ok {
            slots.swap(i, i + 1);
            accepted += 1;
        }
        i += 2;
    }
    accepted
}
