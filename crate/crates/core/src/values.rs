//! Calendar-value helpers over TIMEX value strings.
//!
//! Values are never recomputed or normalised during conversion; these
//! routines only classify value strings and decide containment between
//! calendar periods (year ⊇ month ⊇ day, ISO week ⊇ day, decade ⊇ year)
//! so that nested conversions can type their links.

use core::cmp::Ordering;

/// Generic reference values that cannot be placed on a calendar.
pub fn is_reference_val(val: &str) -> bool {
    matches!(val, "FUTURE_REF" | "PAST_REF" | "PRESENT_REF")
}

/// True when the value carries a time-of-day component: a `T` designator
/// after a date (or underspecified `X`) field, a bare `Txx` form, or a bare
/// clock time such as `10:49:00`.
pub fn looks_like_time(val: &str) -> bool {
    let bytes = val.as_bytes();
    for (i, b) in bytes.iter().enumerate() {
        if *b == b'T' && i > 0 {
            let prev = bytes[i - 1];
            if prev.is_ascii_digit() || prev == b'X' {
                return true;
            }
        }
    }
    if let Some(rest) = val.strip_prefix('T') {
        if rest.chars().next().is_some_and(|c| c.is_ascii_digit() || c.is_ascii_uppercase()) {
            return true;
        }
    }
    // Bare clock time: H:MM or HH:MM, optionally longer.
    let mut it = val.splitn(2, ':');
    if let (Some(h), Some(rest)) = (it.next(), it.next()) {
        let hours_ok = !h.is_empty() && h.len() <= 2 && h.bytes().all(|b| b.is_ascii_digit());
        let min_ok = rest.len() >= 2 && rest.as_bytes()[..2].iter().all(u8::is_ascii_digit);
        if hours_ok && min_ok {
            return true;
        }
    }
    false
}

fn is_leap_year(y: i64) -> bool {
    y % 4 == 0 && (y % 100 != 0 || y % 400 == 0)
}

fn day_of_year(y: i64, m: u32, d: u32) -> u32 {
    const CUM: [u32; 12] = [0, 31, 59, 90, 120, 151, 181, 212, 243, 273, 304, 334];
    let mut ord = CUM[(m - 1) as usize] + d;
    if m > 2 && is_leap_year(y) {
        ord += 1;
    }
    ord
}

/// Days since 1970-01-01 for a proleptic Gregorian civil date.
fn days_from_civil(y: i64, m: u32, d: u32) -> i64 {
    let y = if m <= 2 { y - 1 } else { y };
    let era = if y >= 0 { y } else { y - 399 } / 400;
    let yoe = y - era * 400;
    let mp = if m > 2 { m - 3 } else { m + 9 } as i64;
    let doy = (153 * mp + 2) / 5 + d as i64 - 1;
    let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    era * 146097 + doe - 719468
}

/// ISO weekday, Monday = 1 through Sunday = 7.
pub fn weekday_iso(y: i64, m: u32, d: u32) -> u32 {
    ((days_from_civil(y, m, d) + 3).rem_euclid(7) + 1) as u32
}

fn iso_weeks_in_year(y: i64) -> u32 {
    // 53-week years are those where Jan 1 or Dec 31 falls on a Thursday.
    let p = |y: i64| (y + y.div_euclid(4) - y.div_euclid(100) + y.div_euclid(400)).rem_euclid(7);
    if p(y) == 4 || p(y - 1) == 3 {
        53
    } else {
        52
    }
}

/// ISO week-numbering year and week for a civil date.
pub fn iso_week(y: i64, m: u32, d: u32) -> (i64, u32) {
    let wd = weekday_iso(y, m, d) as i64;
    let ord = day_of_year(y, m, d) as i64;
    let week = (ord - wd + 10) / 7;
    if week < 1 {
        (y - 1, iso_weeks_in_year(y - 1))
    } else if week as u32 > iso_weeks_in_year(y) {
        (y + 1, 1)
    } else {
        (y, week as u32)
    }
}

fn parse_date(val: &str) -> Option<(i64, u32, u32)> {
    let date = val.split('T').next()?;
    let mut parts = date.split('-');
    let y: i64 = parse_num(parts.next()?, 4)?;
    let m: u32 = parse_num(parts.next()?, 2)? as u32;
    let d: u32 = parse_num(parts.next()?, 2)? as u32;
    if parts.next().is_some() || !(1..=12).contains(&m) || !(1..=31).contains(&d) {
        return None;
    }
    Some((y, m, d))
}

fn parse_num(s: &str, width: usize) -> Option<i64> {
    if s.len() != width || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Week period `YYYY-Wnn`, case-insensitive on the `W`.
fn parse_week(val: &str) -> Option<(i64, u32)> {
    let (y, rest) = val.split_once('-')?;
    let y = parse_num(y, 4)?;
    let w = rest.strip_prefix(['W', 'w'])?;
    let w = parse_num(w, 2)? as u32;
    if (1..=53).contains(&w) {
        Some((y, w))
    } else {
        None
    }
}

/// Does the calendar period named by `outer` properly contain the one named
/// by `inner`? Undecidable pairs answer `false`.
pub fn value_contains(outer: &str, inner: &str) -> bool {
    if outer.is_empty() || inner.is_empty() || outer == inner {
        return false;
    }
    if is_reference_val(outer) || is_reference_val(inner) {
        return false;
    }
    // Hyphen- or T-boundary prefix: 1999 ⊇ 1999-06 ⊇ 1999-06-07 ⊇ ...T10:49.
    if let Some(rest) = inner.strip_prefix(outer) {
        if rest.starts_with('-') || rest.starts_with('T') {
            return true;
        }
    }
    // Decade "199" and century "19" forms contain any date they prefix.
    if (outer.len() == 3 || outer.len() == 2)
        && outer.bytes().all(|b| b.is_ascii_digit())
        && inner.len() > outer.len()
        && inner.starts_with(outer)
        && inner.as_bytes()[outer.len()].is_ascii_digit()
    {
        return true;
    }
    if let (Some((wy, w)), Some((y, m, d))) = (parse_week(outer), parse_date(inner)) {
        return iso_week(y, m, d) == (wy, w);
    }
    false
}

/// Order two values of identical calendar granularity; `None` when the
/// shapes differ or are not plain dates.
pub fn value_order(a: &str, b: &str) -> Option<Ordering> {
    fn shape(v: &str) -> Option<usize> {
        match v.len() {
            4 => parse_num(v, 4).map(|_| 1),
            7 => {
                let (y, m) = v.split_once('-')?;
                parse_num(y, 4)?;
                parse_num(m, 2)?;
                Some(2)
            }
            10 => parse_date(v).map(|_| 3),
            _ => None,
        }
    }
    if shape(a)? == shape(b)? {
        Some(a.cmp(b))
    } else {
        None
    }
}
