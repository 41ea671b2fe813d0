/** Row fill per shade level. Level 0 is the white background for
 * non-matching compounds; levels 1-3 are progressively deeper green for
 * matches with higher frequency. Placeholder palette pending evaluation
 * with chemists. */
export const SHADE_COLORS = ["#ffffff", "#dcf2dc", "#a9e3a9", "#66c366"] as const;

export type ShadeLevel = 0 | 1 | 2 | 3;

export function shadeColor(level: ShadeLevel): string {
  return SHADE_COLORS[level];
}
