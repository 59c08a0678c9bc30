//! Local moves performed directly on Gauss codes: kink insertion and
//! deletion, clasp insertion and deletion, and the two forbidden detour
//! moves. Positions always refer to the code's canonical form, and every
//! result is canonicalized again.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closure::{GaussCode, Pass, Role};
use crate::error::Error;
use crate::Result;

fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidMove(format!(
            "sign must be 1 or -1, got {sign}"
        )))
    }
}

fn component(code: &GaussCode, comp: usize) -> Result<&Vec<Pass>> {
    code.components().get(comp).ok_or_else(|| {
        Error::IndexOutOfRange(format!(
            "component {comp} is not on 0..{}",
            code.component_count()
        ))
    })
}

fn check_gap(comp_len: usize, gap: usize) -> Result<()> {
    if gap > comp_len {
        return Err(Error::IndexOutOfRange(format!(
            "gap {gap} is not on 0..={comp_len}"
        )));
    }
    Ok(())
}

fn check_pos(comp_len: usize, pos: usize) -> Result<()> {
    if pos >= comp_len {
        return Err(Error::IndexOutOfRange(format!(
            "position {pos} is not on 0..{comp_len}"
        )));
    }
    Ok(())
}

/// Compacts crossing ids to 1..=c after deletions, preserving order.
fn renumber(mut components: Vec<Vec<Pass>>) -> Vec<Vec<Pass>> {
    let mut ids: Vec<usize> = components
        .iter()
        .flatten()
        .map(|p| p.id)
        .collect();
    ids.sort_unstable();
    ids.dedup();
    for comp in &mut components {
        for pass in comp {
            pass.id = ids.binary_search(&pass.id).expect("id present") + 1;
        }
    }
    components
}

/// Inserts a kink: a new crossing visited twice in a row. The new pair is
/// placed at `gap` in component `comp`, leading with the given role.
pub fn r1_insert(
    code: &GaussCode,
    comp: usize,
    gap: usize,
    role_first: Role,
    sign: i8,
) -> Result<GaussCode> {
    check_sign(sign)?;
    let target = component(code, comp)?;
    check_gap(target.len(), gap)?;
    let id = code.crossing_count() + 1;
    let other = match role_first {
        Role::O => Role::U,
        Role::U => Role::O,
    };
    let mut components = code.components().to_vec();
    components[comp].splice(
        gap..gap,
        [
            Pass { id, role: role_first, sign },
            Pass { id, role: other, sign },
        ],
    );
    GaussCode::new(components)
}

/// Deletes a kink: the two passes at cyclic positions pos, pos+1 of the
/// component must visit the same crossing.
pub fn r1_delete(code: &GaussCode, comp: usize, pos: usize) -> Result<GaussCode> {
    let target = component(code, comp)?;
    check_pos(target.len(), pos)?;
    let next = (pos + 1) % target.len();
    if next == pos || target[pos].id != target[next].id {
        return Err(Error::NoMatch {
            rel: "r1".into(),
            pos,
        });
    }
    let mut components = code.components().to_vec();
    let kept: Vec<Pass> = components[comp]
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != pos && k != next)
        .map(|(_, p)| *p)
        .collect();
    components[comp] = kept;
    GaussCode::new(renumber(components))
}

/// Inserts a clasp: two new crossings of opposite sign, passed over in a
/// row at one gap and under in reverse order at the other. Gaps refer to
/// positions in the unmodified code.
pub fn r2_insert(
    code: &GaussCode,
    comp1: usize,
    gap1: usize,
    comp2: usize,
    gap2: usize,
    sign_a: i8,
) -> Result<GaussCode> {
    check_sign(sign_a)?;
    check_gap(component(code, comp1)?.len(), gap1)?;
    check_gap(component(code, comp2)?.len(), gap2)?;
    let a = code.crossing_count() + 1;
    let b = a + 1;
    let over_block = [
        Pass { id: a, role: Role::O, sign: sign_a },
        Pass { id: b, role: Role::O, sign: -sign_a },
    ];
    let under_block = [
        Pass { id: b, role: Role::U, sign: -sign_a },
        Pass { id: a, role: Role::U, sign: sign_a },
    ];
    let mut components = code.components().to_vec();
    if comp1 == comp2 {
        let comp = &mut components[comp1];
        let mut out = Vec::with_capacity(comp.len() + 4);
        for k in 0..=comp.len() {
            if k == gap1 {
                out.extend(over_block);
            }
            if k == gap2 {
                out.extend(under_block);
            }
            if k < comp.len() {
                out.push(comp[k]);
            }
        }
        *comp = out;
    } else {
        components[comp1].splice(gap1..gap1, over_block);
        components[comp2].splice(gap2..gap2, under_block);
    }
    GaussCode::new(components)
}

/// Deletes a clasp. The passes at cyclic positions pos, pos+1 must be the
/// over passes of two distinct, oppositely signed crossings whose under
/// passes are cyclically adjacent in reverse order somewhere in the code.
pub fn r2_delete(code: &GaussCode, comp: usize, pos: usize) -> Result<GaussCode> {
    let no_match = || Error::NoMatch {
        rel: "r2".into(),
        pos,
    };
    let target = component(code, comp)?;
    check_pos(target.len(), pos)?;
    let next = (pos + 1) % target.len();
    if next == pos {
        return Err(no_match());
    }
    let (x, y) = (target[pos], target[next]);
    if x.role != Role::O || y.role != Role::O || x.id == y.id || x.sign != -y.sign {
        return Err(no_match());
    }
    let mut under_at = None;
    'search: for (ci, c) in code.components().iter().enumerate() {
        for q in 0..c.len() {
            let qn = (q + 1) % c.len();
            if qn != q
                && c[q].role == Role::U
                && c[qn].role == Role::U
                && c[q].id == y.id
                && c[qn].id == x.id
            {
                under_at = Some((ci, q, qn));
                break 'search;
            }
        }
    }
    let (ci, q, qn) = under_at.ok_or_else(no_match)?;
    let mut components = code.components().to_vec();
    let keep = |k: usize, drop_a: usize, drop_b: usize| k != drop_a && k != drop_b;
    let strip = |comp: &[Pass], drop_a: usize, drop_b: usize| -> Vec<Pass> {
        comp.iter()
            .enumerate()
            .filter(|&(k, _)| keep(k, drop_a, drop_b))
            .map(|(_, p)| *p)
            .collect()
    };
    if ci == comp {
        components[comp] = components[comp]
            .iter()
            .enumerate()
            .filter(|&(k, _)| keep(k, pos, next) && keep(k, q, qn))
            .map(|(_, p)| *p)
            .collect();
    } else {
        components[comp] = strip(&components[comp], pos, next);
        components[ci] = strip(&components[ci], q, qn);
    }
    GaussCode::new(renumber(components))
}

fn transpose(code: &GaussCode, comp: usize, pos: usize, role: Role, name: &str) -> Result<GaussCode> {
    let target = component(code, comp)?;
    check_pos(target.len(), pos)?;
    let next = (pos + 1) % target.len();
    if next == pos || target[pos].role != role || target[next].role != role {
        return Err(Error::NoMatch {
            rel: name.into(),
            pos,
        });
    }
    let mut components = code.components().to_vec();
    components[comp].swap(pos, next);
    GaussCode::new(components)
}

/// Forbidden detour move: swaps two consecutive over passes.
pub fn forbidden_over(code: &GaussCode, comp: usize, pos: usize) -> Result<GaussCode> {
    transpose(code, comp, pos, Role::O, "forbidden_over")
}

/// Forbidden detour move: swaps two consecutive under passes.
pub fn forbidden_under(code: &GaussCode, comp: usize, pos: usize) -> Result<GaussCode> {
    transpose(code, comp, pos, Role::U, "forbidden_under")
}

/// A Gauss-code move as a replayable record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum GaussMove {
    R1Insert { comp: usize, gap: usize, role: Role, sign: i8 },
    R1Delete { comp: usize, pos: usize },
    R2Insert { comp1: usize, gap1: usize, comp2: usize, gap2: usize, sign: i8 },
    R2Delete { comp: usize, pos: usize },
    ForbiddenOver { comp: usize, pos: usize },
    ForbiddenUnder { comp: usize, pos: usize },
}

pub fn apply_gauss_move(code: &GaussCode, mv: &GaussMove) -> Result<GaussCode> {
    match *mv {
        GaussMove::R1Insert { comp, gap, role, sign } => r1_insert(code, comp, gap, role, sign),
        GaussMove::R1Delete { comp, pos } => r1_delete(code, comp, pos),
        GaussMove::R2Insert { comp1, gap1, comp2, gap2, sign } => {
            r2_insert(code, comp1, gap1, comp2, gap2, sign)
        }
        GaussMove::R2Delete { comp, pos } => r2_delete(code, comp, pos),
        GaussMove::ForbiddenOver { comp, pos } => forbidden_over(code, comp, pos),
        GaussMove::ForbiddenUnder { comp, pos } => forbidden_under(code, comp, pos),
    }
}

/// Uniformly scattered valid code: up to `max_crossings` crossings thrown
/// into up to `max_components` components. Deterministic in the seed.
pub fn random_code(seed: u64, max_crossings: usize, max_components: usize) -> GaussCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let crossings = rng.gen_range(0..=max_crossings);
    let k = rng.gen_range(1..=max_components.max(1));
    let mut components: Vec<Vec<Pass>> = vec![Vec::new(); k];
    for id in 1..=crossings {
        let sign = if rng.gen::<bool>() { 1 } else { -1 };
        for role in [Role::O, Role::U] {
            let target = rng.gen_range(0..k);
            components[target].push(Pass { id, role, sign });
        }
    }
    for comp in &mut components {
        comp.shuffle(&mut rng);
    }
    GaussCode::new(components).expect("scattered passes always form a valid code")
}
