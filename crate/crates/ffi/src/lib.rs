//! C ABI for the `coalesced` crate.
//!
//! Tables are opaque handles created by [`coalesced_table_new`] and released
//! with [`coalesced_table_free`]. Every fallible call returns a
//! [`CoalescedStatus`] and writes results through out-pointers. Cell and item
//! indices are 1-based, as in the Rust API.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use coalesced::limit::{self, LimitSpec};
use coalesced::{Error, HashTable, Policy};

pub const COALESCED_POLICY_UNSUCCESSFUL: u32 = 0;
pub const COALESCED_POLICY_LATE: u32 = 1;
pub const COALESCED_POLICY_EARLY: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoalescedStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidSize = 2,
    InvalidPolicy = 3,
    InvalidAddress = 4,
    TableFull = 5,
    InvalidItem = 6,
    EmptyTable = 7,
    BufferTooSmall = 8,
    InvalidArgument = 9,
    NumericFailure = 10,
    Panic = 11,
}

/// Opaque table handle.
pub struct CoalescedTable {
    inner: HashTable,
}

impl From<Error> for CoalescedStatus {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSize => CoalescedStatus::InvalidSize,
            Error::InvalidPolicy(_) => CoalescedStatus::InvalidPolicy,
            Error::InvalidAddress { .. } => CoalescedStatus::InvalidAddress,
            Error::TableFull { .. } => CoalescedStatus::TableFull,
            Error::InvalidItem { .. } => CoalescedStatus::InvalidItem,
            Error::EmptyTable => CoalescedStatus::EmptyTable,
            Error::NumericFailure(_) => CoalescedStatus::NumericFailure,
            Error::UnsupportedK(_)
            | Error::InvalidAlpha(_)
            | Error::Config(_)
            | Error::TooLarge { .. } => CoalescedStatus::InvalidArgument,
        }
    }
}

fn policy_from(code: u32) -> Result<Policy, CoalescedStatus> {
    match code {
        COALESCED_POLICY_UNSUCCESSFUL => Ok(Policy::Unsuccessful),
        COALESCED_POLICY_LATE => Ok(Policy::Late),
        COALESCED_POLICY_EARLY => Ok(Policy::Early),
        _ => Err(CoalescedStatus::InvalidPolicy),
    }
}

fn guard(f: impl FnOnce() -> Result<(), CoalescedStatus>) -> CoalescedStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CoalescedStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => CoalescedStatus::Panic,
    }
}

unsafe fn table_ref<'a>(
    table: *const CoalescedTable,
) -> Result<&'a CoalescedTable, CoalescedStatus> {
    table.as_ref().ok_or(CoalescedStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), CoalescedStatus> {
    if out.is_null() {
        return Err(CoalescedStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

/// Creates an empty table with `m` cells.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn coalesced_table_new(
    m: usize,
    policy: u32,
    out: *mut *mut CoalescedTable,
) -> CoalescedStatus {
    guard(|| {
        if out.is_null() {
            return Err(CoalescedStatus::NullPointer);
        }
        let inner = HashTable::new(m, policy_from(policy)?)?;
        write(out, Box::into_raw(Box::new(CoalescedTable { inner })))
    })
}

/// Releases a table. Null is ignored.
///
/// # Safety
/// `table` must be null or a handle from [`coalesced_table_new`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn coalesced_table_free(table: *mut CoalescedTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Inserts an item with hash address `h` (1-based) and reports its
/// displacement at insertion time. `out_displacement` may be null.
///
/// # Safety
/// `table` must be a live handle; `out_displacement` null or writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_table_insert(
    table: *mut CoalescedTable,
    h: usize,
    out_displacement: *mut u32,
) -> CoalescedStatus {
    guard(|| {
        let t = table.as_mut().ok_or(CoalescedStatus::NullPointer)?;
        let d = t.inner.insert(h)?;
        if !out_displacement.is_null() {
            out_displacement.write(d);
        }
        Ok(())
    })
}

/// # Safety
/// `table` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_table_len(
    table: *const CoalescedTable,
    out: *mut usize,
) -> CoalescedStatus {
    guard(|| write(out, table_ref(table)?.inner.len()))
}

/// # Safety
/// `table` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_table_capacity(
    table: *const CoalescedTable,
    out: *mut usize,
) -> CoalescedStatus {
    guard(|| write(out, table_ref(table)?.inner.capacity()))
}

/// Current displacement of item `item` (1-based, in insertion order).
///
/// # Safety
/// `table` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_table_displacement(
    table: *const CoalescedTable,
    item: usize,
    out: *mut u32,
) -> CoalescedStatus {
    guard(|| write(out, table_ref(table)?.inner.displacement_of(item)?))
}

/// Occupied cells met by an unsuccessful search starting at cell `j`.
///
/// # Safety
/// `table` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_table_unsuccessful_cost(
    table: *const CoalescedTable,
    j: usize,
    out: *mut u32,
) -> CoalescedStatus {
    guard(|| write(out, table_ref(table)?.inner.unsuccessful_search_cost(j)?))
}

/// Copies the histogram `n_0, n_1, ...` of successful displacements (the
/// table's own policy) or unsuccessful-search costs (`which` =
/// `COALESCED_POLICY_UNSUCCESSFUL`) into `buf`.
///
/// `out_len` always receives the number of entries needed; when `buf_len` is
/// smaller, nothing is copied and `BufferTooSmall` is returned. `buf` may be
/// null when `buf_len` is zero.
///
/// # Safety
/// `table` must be a live handle, `out_len` writable and `buf` valid for
/// `buf_len` writes.
#[no_mangle]
pub unsafe extern "C" fn coalesced_table_histogram(
    table: *const CoalescedTable,
    which: u32,
    buf: *mut u64,
    buf_len: usize,
    out_len: *mut usize,
) -> CoalescedStatus {
    guard(|| {
        let t = table_ref(table)?;
        let h = t.inner.histogram(policy_from(which)?)?;
        let counts = h.counts();
        write(out_len, counts.len())?;
        if buf_len < counts.len() {
            return Err(CoalescedStatus::BufferTooSmall);
        }
        if !counts.is_empty() {
            if buf.is_null() {
                return Err(CoalescedStatus::NullPointer);
            }
            ptr::copy_nonoverlapping(counts.as_ptr(), buf, counts.len());
        }
        Ok(())
    })
}

fn spec(alpha: f64, policy: u32) -> Result<LimitSpec, CoalescedStatus> {
    Ok(LimitSpec::new(alpha, policy_from(policy)?)?)
}

/// Limit probability `p(k)` at load factor `alpha`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_p_limit(
    alpha: f64,
    policy: u32,
    k: usize,
    out: *mut f64,
) -> CoalescedStatus {
    guard(|| write(out, limit::p_limit(spec(alpha, policy)?, k)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_mean_limit(
    alpha: f64,
    policy: u32,
    out: *mut f64,
) -> CoalescedStatus {
    guard(|| write(out, limit::mean_limit(spec(alpha, policy)?)))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_var_limit(
    alpha: f64,
    policy: u32,
    out: *mut f64,
) -> CoalescedStatus {
    guard(|| write(out, limit::var_limit(spec(alpha, policy)?)))
}

/// Mean and variance of the probe count `max(d, 1)` of an unsuccessful
/// search in the limit.
///
/// # Safety
/// Both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn coalesced_probe_stats(
    alpha: f64,
    out_mean: *mut f64,
    out_variance: *mut f64,
) -> CoalescedStatus {
    guard(|| {
        if out_mean.is_null() || out_variance.is_null() {
            return Err(CoalescedStatus::NullPointer);
        }
        let s = limit::probe_stats_unsuccessful(alpha)?;
        write(out_mean, s.mean)?;
        write(out_variance, s.variance)
    })
}

/// Static, NUL-terminated description of a status code. Never free it.
#[no_mangle]
pub extern "C" fn coalesced_status_message(status: CoalescedStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        CoalescedStatus::Ok => c"ok",
        CoalescedStatus::NullPointer => c"null pointer argument",
        CoalescedStatus::InvalidSize => c"table size must be at least 1",
        CoalescedStatus::InvalidPolicy => c"policy not valid for this operation",
        CoalescedStatus::InvalidAddress => c"address outside 1..=m",
        CoalescedStatus::TableFull => c"table is full",
        CoalescedStatus::InvalidItem => c"no such item",
        CoalescedStatus::EmptyTable => c"table is empty",
        CoalescedStatus::BufferTooSmall => c"buffer too small",
        CoalescedStatus::InvalidArgument => c"invalid argument",
        CoalescedStatus::NumericFailure => c"numeric failure",
        CoalescedStatus::Panic => c"internal panic",
    };
    msg.as_ptr()
}
