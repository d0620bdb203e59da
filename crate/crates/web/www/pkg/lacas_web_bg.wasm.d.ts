/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_demo_free: (a: number, b: number) => void;
export const demo_explore: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demo_families: () => [number, number];
export const demo_locations: (a: number) => number;
export const demo_new: (a: number, b: number, c: bigint, d: number) => [number, number, number];
export const demo_obstacles: (a: number) => number;
export const demo_solve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const demo_svg: (a: number) => [number, number];
export const __externref_table_alloc: () => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_start: () => void;
