//! C ABI stub; filled in once the core library is complete.

#[no_mangle]
pub extern "C" fn x0n_abi_version() -> u32 {
    1
}
