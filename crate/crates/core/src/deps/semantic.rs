use super::{atoms::team_satisfies, Dependency};
use crate::error::{Error, Result};
use crate::model::{Element, Team, Var};
use crate::syntax::VarSet;

/// Search bounds for `semantic_implies`: values in `{0,…,domain_size-1}`
/// and at most `max_rows` rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub domain_size: usize,
    pub max_rows: usize,
    pub max_teams: u64,
}

impl Bounds {
    pub fn new(domain_size: usize, max_rows: usize) -> Bounds {
        Bounds {
            domain_size,
            max_rows,
            max_teams: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No team within the bounds satisfies the premises and fails the goal.
    ValidUpToBounds { teams_checked: u64 },
    /// A team with the fewest rows satisfying the premises but not the goal.
    Countermodel(Team),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::ValidUpToBounds { .. })
    }
}

/// Looks for a countermodel to `premises ⊨ goal` among teams over `universe`.
///
/// Dependencies are preserved by permuting the values of each column
/// separately, so only teams containing the all-zero row are visited; the
/// empty team satisfies everything and is skipped.
pub fn semantic_implies(premises: &[Dependency], goal: &Dependency, universe: &VarSet, bounds: Bounds) -> Result<Verdict> {
    for d in premises.iter().chain([goal]) {
        if let Dependency::Mvd(m) = d {
            if m.universe != *universe {
                return Err(Error::UniverseMismatch(format!("`{m}` is relative to a different universe")));
            }
        } else if let Some(v) = d.vars().iter().find(|v| !universe.contains(*v)) {
            return Err(Error::UniverseMismatch(format!("`{v}` in `{d}` is not in the universe")));
        }
    }
    let vars: Vec<Var> = universe.iter().cloned().collect();
    let cells = (bounds.domain_size as u128)
        .checked_pow(vars.len() as u32)
        .filter(|&c| c <= 1 << 20)
        .ok_or_else(|| Error::LimitExceeded("too many assignments to enumerate".into()))? as usize;
    if bounds.domain_size == 0 || bounds.max_rows == 0 {
        return Ok(Verdict::ValidUpToBounds { teams_checked: 0 });
    }
    let tuples: Vec<Vec<Element>> = (0..cells)
        .map(|mut c| {
            let mut t = vec![Element::new(0); vars.len()];
            for slot in t.iter_mut().rev() {
                *slot = Element::new(c % bounds.domain_size);
                c /= bounds.domain_size;
            }
            t
        })
        .collect();
    let mut total: u128 = 0;
    for extra in 0..bounds.max_rows.min(cells) {
        total += binomial(cells as u128 - 1, extra as u128);
    }
    if total > bounds.max_teams as u128 {
        return Err(Error::LimitExceeded(format!(
            "{total} teams exceed the bound of {}",
            bounds.max_teams
        )));
    }
    let mut checked = 0u64;
    // tuple 0 is the all-zero row; pick `extra` more from the rest
    for extra in 0..bounds.max_rows.min(cells) {
        let mut pick: Vec<usize> = (1..=extra).collect();
        loop {
            checked += 1;
            let rows = std::iter::once(0).chain(pick.iter().copied()).map(|i| tuples[i].clone());
            let team = Team::from_rows(&vars, rows)?;
            let mut holds = true;
            for p in premises {
                if !team_satisfies(&team, p)? {
                    holds = false;
                    break;
                }
            }
            if holds && !team_satisfies(&team, goal)? {
                return Ok(Verdict::Countermodel(team));
            }
            if !advance(&mut pick, cells) {
                break;
            }
        }
    }
    Ok(Verdict::ValidUpToBounds { teams_checked: checked })
}

/// Next increasing selection from `1..cells`, in lexicographic order.
fn advance(pick: &mut [usize], cells: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < cells - (k - i) {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
