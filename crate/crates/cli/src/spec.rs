//! `--gen` channel specifications such as `deletion:8` or `erasure-sub:3:5:1:1`.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use rand::rngs::StdRng;
use rand::SeedableRng;

use combichannel::bounds::{edge_only_lower_tight, edge_only_upper_tight};
use combichannel::zoo::{deletion_channel, erasure_substitution_channel, grain_channel, random_channel};
use combichannel::Channel;

#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Deletion(usize),
    Grain(usize),
    ErasureSub { q: usize, n: usize, a: usize, b: usize },
    Identity(usize),
    Fig1,
    Random { inputs: usize, outputs: usize, density: f64 },
    EdgeUpperTight { inputs: usize, outputs: usize, s: usize },
    EdgeLowerTight { inputs: usize, outputs: usize, r: usize },
}

fn nums<const N: usize>(name: &str, args: &[&str]) -> Result<[usize; N]> {
    if args.len() != N {
        bail!("{name} takes {N} parameter(s), got {}", args.len());
    }
    let mut out = [0; N];
    for (slot, a) in out.iter_mut().zip(args) {
        *slot = a.parse().with_context(|| format!("{name}: {a:?} is not a nonnegative integer"))?;
    }
    Ok(out)
}

impl FromStr for GenSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<GenSpec> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        Ok(match name {
            "deletion" => GenSpec::Deletion(nums::<1>(name, &args)?[0]),
            "grain" => GenSpec::Grain(nums::<1>(name, &args)?[0]),
            "erasure-sub" => {
                let [q, n, a, b] = nums(name, &args)?;
                GenSpec::ErasureSub { q, n, a, b }
            }
            "identity" => GenSpec::Identity(nums::<1>(name, &args)?[0]),
            "fig1" => {
                nums::<0>(name, &args)?;
                GenSpec::Fig1
            }
            "random" => {
                let (dims, density) = match args.as_slice() {
                    [x, y] => ([*x, *y], 0.3),
                    [x, y, d] => ([*x, *y], d.parse().with_context(|| format!("random: bad density {d:?}"))?),
                    _ => bail!("random takes inputs:outputs[:density]"),
                };
                let [inputs, outputs] = nums(name, &dims)?;
                GenSpec::Random { inputs, outputs, density }
            }
            "edge-upper-tight" => {
                let [inputs, outputs, s] = nums(name, &args)?;
                GenSpec::EdgeUpperTight { inputs, outputs, s }
            }
            "edge-lower-tight" => {
                let [inputs, outputs, r] = nums(name, &args)?;
                GenSpec::EdgeLowerTight { inputs, outputs, r }
            }
            _ => bail!(
                "unknown generator {name:?}; expected deletion, grain, erasure-sub, identity, fig1, random, \
                 edge-upper-tight or edge-lower-tight"
            ),
        })
    }
}

/// The four-input, three-output example channel.
pub fn fig1() -> Channel {
    Channel::new(4, 3, [(0, 0), (1, 0), (1, 1), (2, 0), (2, 2), (3, 1), (3, 2)]).expect("valid channel")
}

impl GenSpec {
    pub fn build(&self, seed: u64) -> Result<Channel> {
        let ch = match *self {
            GenSpec::Deletion(n) => deletion_channel(n)?,
            GenSpec::Grain(n) => grain_channel(n)?,
            GenSpec::ErasureSub { q, n, a, b } => erasure_substitution_channel(q, n, a, b)?,
            GenSpec::Identity(k) => {
                if k == 0 {
                    bail!("identity needs k >= 1");
                }
                Channel::identity(k)
            }
            GenSpec::Fig1 => fig1(),
            GenSpec::Random { inputs, outputs, density } => {
                if inputs == 0 || outputs == 0 {
                    return Err(anyhow!("random channel needs at least one input and output"));
                }
                random_channel(inputs, outputs, density, &mut StdRng::seed_from_u64(seed))
            }
            GenSpec::EdgeUpperTight { inputs, outputs, s } => edge_only_upper_tight(inputs, outputs, s)?,
            GenSpec::EdgeLowerTight { inputs, outputs, r } => edge_only_lower_tight(inputs, outputs, r)?,
        };
        Ok(ch)
    }
}
