//! Synthetic equity price histories with a planted sector structure, for
//! exercising the correlation-distance pipeline end to end without market
//! data.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::metric::PriceTable;

/// The thirty Dow constituents of the early 2000s with their sector tags,
/// alphabetical by ticker.
pub const DOW_TICKERS: [(&str, &str); 30] = [
    ("AA", "basic-materials"),
    ("AXP", "financial"),
    ("BA", "capital-goods"),
    ("C", "financial"),
    ("CAT", "capital-goods"),
    ("DD", "basic-materials"),
    ("DIS", "services"),
    ("EK", "consumer-cyclical"),
    ("GE", "conglomerates"),
    ("GM", "consumer-cyclical"),
    ("HD", "services"),
    ("HON", "capital-goods"),
    ("HPQ", "technology"),
    ("IBM", "technology"),
    ("INTC", "technology"),
    ("IP", "basic-materials"),
    ("JNJ", "healthcare"),
    ("JPM", "financial"),
    ("KO", "consumer-non-cyclical"),
    ("MCD", "services"),
    ("MMM", "conglomerates"),
    ("MO", "consumer-non-cyclical"),
    ("MRK", "healthcare"),
    ("MSFT", "technology"),
    ("PG", "consumer-non-cyclical"),
    ("SBC", "services"),
    ("T", "services"),
    ("UTX", "conglomerates"),
    ("WMT", "services"),
    ("XOM", "energy"),
];

/// Sector of a ticker from [`DOW_TICKERS`], if present.
pub fn sector_of(ticker: &str) -> Option<&'static str> {
    DOW_TICKERS
        .iter()
        .find(|(t, _)| *t == ticker)
        .map(|(_, s)| *s)
}

/// Generates `n_days` of daily closes for the thirty [`DOW_TICKERS`] from a
/// one-factor-per-sector log-return model: each day every stock moves with
/// the market, with its sector, and on its own. Same-sector pairs therefore
/// correlate more strongly than cross-sector pairs. Deterministic in
/// `seed`; prices stay strictly positive by construction.
pub fn synthetic_price_table(n_days: usize, seed: u64) -> Result<PriceTable> {
    if n_days < 2 {
        return Err(Error::BadDatasetParams {
            reason: format!("need at least 2 days of prices, got {n_days}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = DOW_TICKERS.len();

    let sectors: Vec<&str> = {
        let mut s: Vec<&str> = DOW_TICKERS.iter().map(|(_, sec)| *sec).collect();
        s.dedup();
        let mut uniq: Vec<&str> = Vec::new();
        for sec in s {
            if !uniq.contains(&sec) {
                uniq.push(sec);
            }
        }
        uniq
    };
    let sector_index: Vec<usize> = DOW_TICKERS
        .iter()
        .map(|(_, sec)| sectors.iter().position(|s| s == sec).unwrap())
        .collect();

    let market_vol = 0.010;
    let sector_vol = 0.008;
    let idio_vol = 0.006;
    let market_beta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.8..1.2)).collect();
    let sector_beta: Vec<f64> = (0..n).map(|_| rng.gen_range(0.7..1.3)).collect();
    let drift: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.0002..0.0004)).collect();
    let start: Vec<f64> = (0..n).map(|_| rng.gen_range(20.0..120.0)).collect();

    let mut prices: Vec<Vec<f64>> = start.iter().map(|&p0| vec![p0]).collect();
    for _ in 1..n_days {
        let market: f64 = rng.sample::<f64, _>(StandardNormal) * market_vol;
        let sector_moves: Vec<f64> = (0..sectors.len())
            .map(|_| rng.sample::<f64, _>(StandardNormal) * sector_vol)
            .collect();
        for i in 0..n {
            let eps: f64 = rng.sample::<f64, _>(StandardNormal) * idio_vol;
            let r = drift[i] + market_beta[i] * market + sector_beta[i] * sector_moves[sector_index[i]] + eps;
            let last = *prices[i].last().expect("seeded with one price");
            prices[i].push(last * r.exp());
        }
    }

    let labels = DOW_TICKERS.iter().map(|(t, _)| t.to_string()).collect();
    let dates = (1..=n_days).map(|t| format!("day-{t:04}")).collect();
    PriceTable::new(labels, dates, prices)
}
