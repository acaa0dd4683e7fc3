/* tslint:disable */
/* eslint-disable */

export class FigureData {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    dashed(i: number): boolean;
    label(i: number): string;
    line(i: number): Float64Array;
    line_count(): number;
    /**
     * Smallest `lines[0] − lines[1]`, or NaN for plain profiles.
     */
    min_margin(): number;
    min_margin_at(): number;
    title(): string;
    volumes(): Float64Array;
}

export class SymmetrizeResult {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Angles of the symmetrized layer on the sphere.
     */
    layer_angles(i: number): Float64Array;
    layer_count(): number;
    layer_values(i: number): Float64Array;
    norm_error(): number;
    pass(): boolean;
    y_cyl(): number;
    y_sphere(): number;
    /**
     * Relative margin of `Y_cyl ≥ c²·Y_sphere`.
     */
    yamabe_margin(): number;
}

/**
 * Samples a profile or comparison figure by name (`figure2`, `s4`, ...).
 */
export function comparison_figure(name: string, eps: number, points: number): FigureData;

/**
 * `[eps, lambda1, lambda2, c, c², Y(S⁴), c²·Y(S⁴), c² − 2/3]`
 */
export function constants(eps: number): Float64Array;

/**
 * Names accepted by [`comparison_figure`], separated by commas.
 */
export function figure_names(): string;

/**
 * Symmetrizes the piecewise-linear radial function through
 * `(radii[i], values[i])` on `S² × ℝ²` and evaluates the Yamabe chain.
 */
export function symmetrize(radii: Float64Array, values: Float64Array, eps: number): SymmetrizeResult;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_figuredata_free: (a: number, b: number) => void;
    readonly __wbg_symmetrizeresult_free: (a: number, b: number) => void;
    readonly comparison_figure: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly constants: (a: number) => [number, number, number, number];
    readonly figure_names: () => [number, number];
    readonly figuredata_dashed: (a: number, b: number) => number;
    readonly figuredata_label: (a: number, b: number) => [number, number];
    readonly figuredata_line: (a: number, b: number) => [number, number];
    readonly figuredata_line_count: (a: number) => number;
    readonly figuredata_min_margin: (a: number) => number;
    readonly figuredata_min_margin_at: (a: number) => number;
    readonly figuredata_title: (a: number) => [number, number];
    readonly figuredata_volumes: (a: number) => [number, number];
    readonly symmetrize: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly symmetrizeresult_layer_angles: (a: number, b: number) => [number, number];
    readonly symmetrizeresult_layer_count: (a: number) => number;
    readonly symmetrizeresult_layer_values: (a: number, b: number) => [number, number];
    readonly symmetrizeresult_norm_error: (a: number) => number;
    readonly symmetrizeresult_pass: (a: number) => number;
    readonly symmetrizeresult_y_cyl: (a: number) => number;
    readonly symmetrizeresult_y_sphere: (a: number) => number;
    readonly symmetrizeresult_yamabe_margin: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
