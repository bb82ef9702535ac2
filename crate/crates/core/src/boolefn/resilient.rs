use super::{certify, TruthTable, MAX_VARS};
use crate::nums::ConstantStream;
use crate::{Error, Result};

/// Attempts before [`construct_resilient`] gives up on a seed.
pub const CONSTRUCTION_TRIALS: usize = 64;

/// Seeded construction of a balanced `m`-resilient function of `n`
/// variables with algebraic degree exactly `d`.
///
/// The table is a Maiorana–McFarland style concatenation: the top
/// `r = d - 2` variables select one of `2^r` blocks on the remaining
/// `k = n - r` variables. All but one block are distinct linear functions
/// `u.x + c` with `wt(u) > m`; the remaining block is `u_S.x + x_i x_j + c`
/// with `|S| > m` and `i, j` outside `S`. Every block is `m`-resilient, so
/// the concatenation is too; the single quadratic block makes the
/// coefficient of `y_1..y_r x_i x_j` nonzero, which pins the degree at
/// `r + 2`. Each Walsh coefficient collects at most one linear block and the
/// quadratic one, so `max |W| <= 2^k + 2^(k-1)`. Finally the variables are
/// permuted at random. For `(9, 2, 6)` this gives nonlinearity at least 232.
///
/// The stream driving the choices is [`ConstantStream`] keyed by `seed`.
pub fn construct_resilient(n: usize, m: usize, d: usize, seed: &[u8]) -> Result<TruthTable> {
    let bad = |why: String| Err(Error::BooleanParameters(why));
    if !(3..=MAX_VARS).contains(&n) {
        return bad(format!("{n} variables not supported"));
    }
    if m + 2 > n || d + m + 1 > n {
        return bad(format!(
            "degree {d} with resiliency {m} violates Siegenthaler's bound for {n} variables"
        ));
    }
    if d < 2 {
        return bad("the construction produces degree >= 2".into());
    }
    let r = d - 2;
    let k = n - r;
    let pool: Vec<u32> = (1u32..1 << k)
        .filter(|u| u.count_ones() as usize > m)
        .collect();
    let blocks = 1usize << r;
    if pool.len() + 1 < blocks {
        return bad(format!(
            "only {} linear blocks of weight > {m} on {k} variables, need {}",
            pool.len(),
            blocks - 1
        ));
    }
    let nl_floor = (1u32 << (n - 1)) - (1 << (k - 1)) - (1 << (k - 2));

    let mut stream = ConstantStream::new(seed);
    for _ in 0..CONSTRUCTION_TRIALS {
        let t = draw(&mut stream, n, m, k, r, &pool);
        let rep = certify(&t);
        if rep.balanced
            && rep.ci_order >= m
            && rep.algebraic_degree == d
            && rep.nonlinearity >= nl_floor
        {
            return Ok(t);
        }
    }
    Err(Error::ConstructionFailed {
        trials: CONSTRUCTION_TRIALS,
    })
}

fn draw(
    stream: &mut ConstantStream,
    n: usize,
    m: usize,
    k: usize,
    r: usize,
    pool: &[u32],
) -> TruthTable {
    let blocks = 1usize << r;
    let mut masks = pool.to_vec();
    stream.shuffle(&mut masks);
    let quad_block = stream.below(blocks as u32) as usize;

    // quadratic block: pick x_i x_j, then a linear part on the other k - 2
    // variables with more than m of them
    let vars = stream.permutation(k);
    let (i, j) = (vars[0], vars[1]);
    let rest = &vars[2..];
    let s_len = m + 1 + stream.below((rest.len() - m) as u32) as usize;
    let s_mask = rest[..s_len].iter().fold(0u32, |acc, &v| acc | 1 << v);

    let constants: Vec<bool> = (0..blocks).map(|_| stream.next_bit()).collect();
    let mut linear = masks.into_iter();
    let block_fns: Vec<Block> = (0..blocks)
        .map(|b| {
            if b == quad_block {
                Block::Quadratic { s: s_mask, i, j }
            } else {
                Block::Linear(linear.next().expect("pool size checked"))
            }
        })
        .collect();

    let x_mask = (1usize << k) - 1;
    let t = TruthTable::from_fn(n, |v| {
        let x = (v & x_mask) as u32;
        let y = v >> k;
        block_fns[y].eval(x) ^ constants[y]
    })
    .expect("n checked");
    let perm = stream.permutation(n);
    t.permute_vars(&perm)
}

enum Block {
    Linear(u32),
    Quadratic { s: u32, i: usize, j: usize },
}

impl Block {
    fn eval(&self, x: u32) -> bool {
        match *self {
            Block::Linear(u) => (u & x).count_ones() & 1 == 1,
            Block::Quadratic { s, i, j } => {
                ((s & x).count_ones() & 1 == 1) ^ ((x >> i) & (x >> j) & 1 == 1)
            }
        }
    }
}
