use crate::error::{ensure_same_len, Result};

/// Set Dice coefficient `2|A ∩ B| / (|A| + |B|)` over boolean masks.
///
/// Two empty masks are identical sets and score 1.
pub fn dice(a: &[bool], b: &[bool]) -> Result<f64> {
    ensure_same_len(a.len(), b.len())?;
    let both = a.iter().zip(b).filter(|(&x, &y)| x && y).count();
    let total = a.iter().filter(|&&x| x).count() + b.iter().filter(|&&y| y).count();
    if total == 0 {
        return Ok(1.0);
    }
    Ok(2.0 * both as f64 / total as f64)
}
