/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_figuredata_free: (a: number, b: number) => void;
export const __wbg_symmetrizeresult_free: (a: number, b: number) => void;
export const comparison_figure: (a: number, b: number, c: number, d: number) => [number, number, number];
export const constants: (a: number) => [number, number, number, number];
export const figure_names: () => [number, number];
export const figuredata_dashed: (a: number, b: number) => number;
export const figuredata_label: (a: number, b: number) => [number, number];
export const figuredata_line: (a: number, b: number) => [number, number];
export const figuredata_line_count: (a: number) => number;
export const figuredata_min_margin: (a: number) => number;
export const figuredata_min_margin_at: (a: number) => number;
export const figuredata_title: (a: number) => [number, number];
export const figuredata_volumes: (a: number) => [number, number];
export const symmetrize: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const symmetrizeresult_layer_angles: (a: number, b: number) => [number, number];
export const symmetrizeresult_layer_count: (a: number) => number;
export const symmetrizeresult_layer_values: (a: number, b: number) => [number, number];
export const symmetrizeresult_norm_error: (a: number) => number;
export const symmetrizeresult_pass: (a: number) => number;
export const symmetrizeresult_y_cyl: (a: number) => number;
export const symmetrizeresult_y_sphere: (a: number) => number;
export const symmetrizeresult_yamabe_margin: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
