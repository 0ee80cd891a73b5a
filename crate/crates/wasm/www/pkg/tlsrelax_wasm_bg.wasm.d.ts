/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curves_free: (a: number, b: number) => void;
export const curves_n: (a: number) => [number, number];
export const curves_n_err: (a: number) => [number, number];
export const curves_r: (a: number) => [number, number];
export const curves_r_err: (a: number) => [number, number];
export const curves_times: (a: number) => [number, number];
export const mc_run: (a: number, b: number, c: number, d: bigint) => [number, number, number];
export const pde_run: (a: number, b: number, c: number) => [number, number, number];
export const static_limit: (a: number, b: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
