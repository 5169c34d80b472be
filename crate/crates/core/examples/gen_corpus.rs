//! Regenerates the regression corpus under `tests/corpus`.
//!
//! Usage: `cargo run --example gen_corpus -- [seed] [solver]`

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reachsat::cnf::{Cnf, Lit};
use reachsat::graph::Cell;
use reachsat::puzzles::{
    solve_instance, MasyuInstance, PuzzleInstance, PuzzleOutcome, RoadrunnerInstance,
    ShingokiInstance, Solution, TapaInstance,
};
use reachsat::sat::{BackendOptions, BackendRegistry, SatBackend, SolveOutcome};

type Rng8 = ChaCha8Rng;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let seed: u64 = args
        .first()
        .map_or(7, |s| s.parse().expect("seed must be an integer"));
    let solver = args.get(1).map_or("splr", String::as_str);
    let backend = BackendRegistry::default()
        .create(solver, &BackendOptions::default())
        .expect("solver");
    let mut rng = Rng8::seed_from_u64(seed);
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus");
    fs::create_dir_all(dir.join("large")).unwrap();

    for (i, n) in [4, 5, 6, 7].into_iter().enumerate() {
        let text = unique_loop_puzzle(&mut rng, n, backend.as_ref(), true);
        write(&dir, &format!("masyu_{n}x{n}_{}.masyu", i + 1), &text);
        let text = unique_loop_puzzle(&mut rng, n, backend.as_ref(), false);
        write(&dir, &format!("shingoki_{n}x{n}_{}.shingoki", i + 1), &text);
        let text = tapa_puzzle(&mut rng, n, backend.as_ref());
        write(&dir, &format!("tapa_{n}x{n}_{}.tapa", i + 1), &text);
    }
    for (i, (w, h)) in [(3, 3), (4, 3), (4, 4), (4, 4), (5, 5), (6, 6)]
        .into_iter()
        .enumerate()
    {
        let text = roadrunner_puzzle(&mut rng, w, h, backend.as_ref());
        write(
            &dir,
            &format!("roadrunner_{w}x{h}_{}.roadrunner", i + 1),
            &text,
        );
    }
    let cyc = random_loop(&mut rng, 30);
    let text = masyu_text(30, &cyc, &loop_candidates(&cyc, true));
    write(&dir.join("large"), "masyu_30x30.masyu", &text);
}

fn write(dir: &Path, name: &str, text: &str) {
    let path: PathBuf = dir.join(name);
    fs::write(&path, text).unwrap();
    eprintln!("wrote {}", path.display());
}

/// A random simple loop through cell centres: the boundary of a hole-free
/// patch of unit squares whose corners are cells. Squares touching the patch
/// along a single side are preferred, which keeps the patch thin and the
/// loop long.
fn random_loop(rng: &mut Rng8, n: usize) -> Vec<Cell> {
    let m = n - 1;
    loop {
        let mut faces: BTreeSet<Cell> = BTreeSet::new();
        faces.insert((rng.gen_range(1..=m), rng.gen_range(1..=m)));
        let target = (m * m / 2).max(1);
        let mut tries = 0;
        while faces.len() < target && tries < 40 * m * m {
            tries += 1;
            let f = (rng.gen_range(1..=m), rng.gen_range(1..=m));
            if faces.contains(&f) {
                continue;
            }
            let touching = [(0i64, 1i64), (0, -1), (1, 0), (-1, 0)]
                .iter()
                .filter(|&&(dr, dc)| {
                    let (r, c) = (f.0 as i64 + dr, f.1 as i64 + dc);
                    r >= 1 && c >= 1 && faces.contains(&(r as usize, c as usize))
                })
                .count();
            if touching == 0 || (touching > 1 && rng.gen_bool(0.9)) {
                continue;
            }
            faces.insert(f);
            if boundary_cycle(&faces).is_none() {
                faces.remove(&f);
            }
        }
        if let Some(cyc) = boundary_cycle(&faces) {
            return cyc;
        }
    }
}

fn boundary_cycle(faces: &BTreeSet<Cell>) -> Option<Vec<Cell>> {
    let mut count: BTreeMap<(Cell, Cell), usize> = BTreeMap::new();
    for &(r, c) in faces {
        let corners = [(r, c), (r, c + 1), (r + 1, c + 1), (r + 1, c)];
        for i in 0..4 {
            let (a, b) = (corners[i], corners[(i + 1) % 4]);
            *count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let mut adj: BTreeMap<Cell, Vec<Cell>> = BTreeMap::new();
    for (&(a, b), &k) in &count {
        if k == 1 {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    if adj.values().any(|v| v.len() != 2) {
        return None;
    }
    let start = *adj.keys().min()?;
    let mut cyc = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        cyc.push(cur);
        let next = if adj[&cur][0] == prev {
            adj[&cur][1]
        } else {
            adj[&cur][0]
        };
        prev = cur;
        cur = next;
    }
    (cyc.len() == adj.len()).then_some(cyc)
}

fn straight(cyc: &[Cell], i: usize) -> bool {
    let len = cyc.len();
    let (p, q) = (cyc[(i + len - 1) % len], cyc[(i + 1) % len]);
    p.0 == q.0 || p.1 == q.1
}

/// Circle candidates on the loop. For Masyu only cells satisfying the white
/// or black rule qualify; for Shingoki every loop cell does.
fn loop_candidates(cyc: &[Cell], masyu: bool) -> Vec<(usize, bool)> {
    let len = cyc.len();
    (0..len)
        .filter_map(|i| {
            let s = straight(cyc, i);
            let (a, b) = (
                straight(cyc, (i + 1) % len),
                straight(cyc, (i + len - 1) % len),
            );
            if !masyu {
                return Some((i, s));
            }
            if s && (!a || !b) {
                Some((i, true))
            } else if !s && a && b {
                Some((i, false))
            } else {
                None
            }
        })
        .collect()
}

fn masyu_text(n: usize, cyc: &[Cell], circles: &[(usize, bool)]) -> String {
    let mut rows = vec![vec!['.'; n]; n];
    for &(i, white) in circles {
        let (r, c) = cyc[i];
        rows[r - 1][c - 1] = if white { 'w' } else { 'b' };
    }
    let body: String = rows
        .iter()
        .map(|r| r.iter().collect::<String>() + "\n")
        .collect();
    format!("{n}\n{body}")
}

/// Length of the straight run leaving `cyc[i]` towards `cyc[i + step]`.
fn arm(cyc: &[Cell], i: usize, forward: bool) -> usize {
    let len = cyc.len();
    let at = |k: usize| cyc[k % len];
    let step = |k: usize| if forward { k + 1 } else { k + len - 1 };
    let d = |a: Cell, b: Cell| (b.0 as i64 - a.0 as i64, b.1 as i64 - a.1 as i64);
    let dir = d(at(i), at(step(i)));
    let mut k = step(i);
    let mut run = 1;
    while d(at(k), at(step(k))) == dir {
        run += 1;
        k = step(k);
    }
    run
}

fn shingoki_text(n: usize, cyc: &[Cell], circles: &[(usize, bool)]) -> String {
    let mut rows = vec![vec![".".to_string(); n]; n];
    for &(i, white) in circles {
        let (r, c) = cyc[i];
        let len = arm(cyc, i, true) + arm(cyc, i, false);
        rows[r - 1][c - 1] = format!("{}{len}", if white { 'w' } else { 'b' });
    }
    let body: String = rows.iter().map(|r| r.join(" ") + "\n").collect();
    format!("{n}\n{body}")
}

fn edge_lits(inst: &dyn PuzzleInstance) -> HashMap<String, Lit> {
    inst.encode()
        .builder
        .names()
        .map(|(i, s)| (s.to_string(), Lit::from_dimacs(i as i32).unwrap()))
        .collect()
}

fn solve(cnf: &Cnf, backend: &dyn SatBackend) -> Option<bool> {
    match backend.solve(cnf).unwrap() {
        SolveOutcome::Sat(_) => Some(true),
        SolveOutcome::Unsat => Some(false),
        SolveOutcome::Unknown(_) => None,
    }
}

/// True when the planted loop is the only solution.
fn loop_unique(inst: &dyn PuzzleInstance, cyc: &[Cell], backend: &dyn SatBackend) -> bool {
    let names = edge_lits(inst);
    let mut cnf = inst.encode().builder.into_cnf();
    let len = cyc.len();
    for forward in [true, false] {
        let block: Vec<Lit> = (0..len)
            .map(|i| {
                let (a, b) = if forward {
                    (cyc[i], cyc[(i + 1) % len])
                } else {
                    (cyc[(i + 1) % len], cyc[i])
                };
                !names[&format!("edge({},{}->{},{})", a.0, a.1, b.0, b.1)]
            })
            .collect();
        cnf.add_clause(&block);
    }
    solve(&cnf, backend) == Some(false)
}

fn unique_loop_puzzle(rng: &mut Rng8, n: usize, backend: &dyn SatBackend, masyu: bool) -> String {
    let text = if masyu { masyu_text } else { shingoki_text };
    loop {
        let t = Instant::now();
        let cyc = random_loop(rng, n);
        if cyc.len() < 4 {
            continue;
        }
        let mut cands = loop_candidates(&cyc, masyu);
        cands.shuffle(rng);
        let mut chosen = Vec::new();
        for cand in cands {
            chosen.push(cand);
            let s = text(n, &cyc, &chosen);
            let inst: Box<dyn PuzzleInstance> = if masyu {
                Box::new(MasyuInstance::parse(&s).unwrap())
            } else {
                Box::new(ShingokiInstance::parse(&s).unwrap())
            };
            if loop_unique(inst.as_ref(), &cyc, backend) {
                eprintln!("{n}x{n} with {} circles in {:?}", chosen.len(), t.elapsed());
                return s;
            }
        }
    }
}

/// A connected shading without 2x2 blocks grown by random accretion.
fn random_shading(rng: &mut Rng8, n: usize) -> Vec<Vec<bool>> {
    let mut black = vec![vec![false; n]; n];
    let (r0, c0) = (rng.gen_range(0..n), rng.gen_range(0..n));
    black[r0][c0] = true;
    let target = n * n * 2 / 5;
    let mut size = 1;
    let mut stalls = 0;
    while size < target && stalls < 500 {
        let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let touches = [(0i64, 1i64), (0, -1), (1, 0), (-1, 0)]
            .iter()
            .any(|&(dr, dc)| {
                let (a, b) = (r as i64 + dr, c as i64 + dc);
                a >= 0 && b >= 0 && a < n as i64 && b < n as i64 && black[a as usize][b as usize]
            });
        if black[r][c] || !touches {
            stalls += 1;
            continue;
        }
        black[r][c] = true;
        let square = (r.saturating_sub(1)..=r.min(n - 2)).any(|a| {
            (c.saturating_sub(1)..=c.min(n - 2))
                .any(|b| black[a][b] && black[a + 1][b] && black[a][b + 1] && black[a + 1][b + 1])
        });
        if square {
            black[r][c] = false;
            stalls += 1;
        } else {
            size += 1;
            stalls = 0;
        }
    }
    black
}

fn tapa_clue(black: &[Vec<bool>], n: usize, (r, c): Cell) -> String {
    // off-board cells count as white on the full circular ring
    let ring = [
        (-1i64, -1i64),
        (-1, 0),
        (-1, 1),
        (0, 1),
        (1, 1),
        (1, 0),
        (1, -1),
        (0, -1),
    ];
    let bits: Vec<bool> = ring
        .iter()
        .map(|&(dr, dc)| {
            let (a, b) = (r as i64 + dr, c as i64 + dc);
            a >= 1
                && b >= 1
                && a <= n as i64
                && b <= n as i64
                && black[a as usize - 1][b as usize - 1]
        })
        .collect();
    let mut runs = Vec::new();
    match bits.iter().position(|&b| !b) {
        None => runs.push(8),
        Some(gap) => {
            let mut cur = 0;
            for k in 1..=8 {
                if bits[(gap + k) % 8] {
                    cur += 1;
                } else if cur > 0 {
                    runs.push(cur);
                    cur = 0;
                }
            }
        }
    }
    if runs.is_empty() {
        runs.push(0);
    }
    runs.sort_unstable();
    runs.iter().map(|x| x.to_string()).collect()
}

fn tapa_text(n: usize, clues: &HashMap<Cell, String>) -> String {
    let body: String = (1..=n)
        .map(|r| {
            (1..=n)
                .map(|c| clues.get(&(r, c)).map_or(".", String::as_str))
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect();
    format!("{n}\n{body}")
}

fn tapa_puzzle(rng: &mut Rng8, n: usize, backend: &dyn SatBackend) -> String {
    loop {
        let t = Instant::now();
        let black = random_shading(rng, n);
        let mut whites: Vec<Cell> = (1..=n)
            .flat_map(|r| (1..=n).map(move |c| (r, c)))
            .filter(|&(r, c)| !black[r - 1][c - 1])
            .collect();
        whites.shuffle(rng);
        let mut clues = HashMap::new();
        for cell in whites {
            clues.insert(cell, tapa_clue(&black, n, cell));
            let s = tapa_text(n, &clues);
            let inst = TapaInstance::parse(&s).unwrap();
            let names = edge_lits(&inst);
            let mut cnf = inst.encode().builder.into_cnf();
            let block: Vec<Lit> = (1..=n)
                .flat_map(|r| (1..=n).map(move |c| (r, c)))
                .map(|(r, c)| {
                    let l = names[&format!("black({r},{c})")];
                    if black[r - 1][c - 1] {
                        !l
                    } else {
                        l
                    }
                })
                .collect();
            cnf.add_clause(&block);
            if solve(&cnf, backend) == Some(false) {
                eprintln!(
                    "tapa {n}x{n} with {} clues in {:?}",
                    clues.len(),
                    t.elapsed()
                );
                return s;
            }
        }
    }
}

fn roadrunner_puzzle(rng: &mut Rng8, w: usize, h: usize, backend: &dyn SatBackend) -> String {
    loop {
        let t = Instant::now();
        let grid: Vec<Vec<char>> = (0..h)
            .map(|_| {
                (0..w)
                    .map(|_| if rng.gen_bool(0.15) { '#' } else { '.' })
                    .collect()
            })
            .collect();
        let text = |g: &[Vec<char>]| {
            format!(
                "{w} {h}\n{}",
                g.iter()
                    .map(|r| r.iter().collect::<String>() + "\n")
                    .collect::<String>()
            )
        };
        let inst = RoadrunnerInstance::parse(&text(&grid)).unwrap();
        let PuzzleOutcome::Solved {
            solution: Solution::Roadrunner(sol),
            ..
        } = solve_instance(&inst, backend).unwrap()
        else {
            continue;
        };
        // number some hills after the lasers of one optimal solution
        let mut g = grid.clone();
        for y in 0..h {
            for x in 0..w {
                if g[y][x] == '#' && rng.gen_bool(0.6) {
                    let lasers = [(0i64, 1i64), (0, -1), (1, 0), (-1, 0)]
                        .iter()
                        .filter(|&&(dy, dx)| {
                            let (a, b) = (y as i64 + dy, x as i64 + dx);
                            a >= 0
                                && b >= 0
                                && a < h as i64
                                && b < w as i64
                                && sol.laser[a as usize][b as usize]
                        })
                        .count();
                    g[y][x] = char::from(b'0' + lasers as u8);
                }
            }
        }
        let s = text(&g);
        let inst = RoadrunnerInstance::parse(&s).unwrap();
        if let PuzzleOutcome::Solved { optimum, .. } = solve_instance(&inst, backend).unwrap() {
            eprintln!(
                "roadrunner {w}x{h} optimum {optimum:?} in {:?}",
                t.elapsed()
            );
            return s;
        }
    }
}
