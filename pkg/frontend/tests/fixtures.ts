/** Served payload fixtures. FIG3_COMPARE is the service's compare body for
 * the two comparison-view fixture papers (structure images inlined as the
 * online service provides them; methanol left without one to exercise the
 * placeholder path). */

import type { ComparePayload, RecommendationsPayload } from "../src/api.js";

// 1x1 transparent PNG
export const TINY_PNG_B64 =
  "iVBORw0KGgoAAAANSUhEUgAAAAEAAAABCAYAAAAfFcSJAAAADUlEQVR42mP8//9/PwAG/QL+py3hagAAAABJRU5ErkJggg==";

export const FIG3_COMPARE: ComparePayload = {
  input: "doc-input-0001",
  candidate: "doc-candidate-0002",
  rows: [
    {
      entity: {
        key: "cid:24083",
        cid: 24083,
        name: "Magnesium sulphate",
        iupac_name: "magnesium;sulfate",
        formula: "MgO4S",
        weight: 120.361,
        structure_image: TINY_PNG_B64,
        synonyms: ["Magnesium sulfate", "Epsom salt"],
        status: "resolved",
      },
      freq_input: 1,
      freq_candidate: 1,
      matched: true,
      shade: 1,
    },
    {
      entity: {
        key: "cid:10340",
        cid: 10340,
        name: "Sodium carbonate",
        iupac_name: "disodium;carbonate",
        formula: "CNa2O3",
        weight: 105.988,
        structure_image: TINY_PNG_B64,
        synonyms: ["Soda ash", "Washing soda", "Disodium carbonate"],
        status: "resolved",
      },
      freq_input: 1,
      freq_candidate: 1,
      matched: true,
      shade: 1,
    },
    {
      entity: {
        key: "cid:962",
        cid: 962,
        name: "Water",
        iupac_name: "oxidane",
        formula: "H2O",
        weight: 18.015,
        structure_image: TINY_PNG_B64,
        synonyms: ["Oxidane", "Dihydrogen monoxide"],
        status: "resolved",
      },
      freq_input: 1,
      freq_candidate: 0,
      matched: false,
      shade: 0,
    },
    {
      entity: {
        key: "cid:887",
        cid: 887,
        name: "Methanol",
        iupac_name: "methanol",
        formula: "CH4O",
        weight: 32.042,
        structure_image: null,
        synonyms: ["Methyl alcohol", "Wood alcohol", "Carbinol"],
        status: "resolved",
      },
      freq_input: 0,
      freq_candidate: 1,
      matched: false,
      shade: 0,
    },
  ],
};

/** Three matched compounds with min-frequencies 5, 2, 1 -> shades 3, 2, 1. */
export const THREE_MATCH_COMPARE: ComparePayload = {
  input: "doc-a",
  candidate: "doc-b",
  rows: [
    {
      entity: {
        key: "cid:962",
        cid: 962,
        name: "Water",
        iupac_name: "oxidane",
        formula: "H2O",
        weight: 18.015,
        structure_image: TINY_PNG_B64,
        synonyms: [],
        status: "resolved",
      },
      freq_input: 5,
      freq_candidate: 7,
      matched: true,
      shade: 3,
    },
    {
      entity: {
        key: "cid:887",
        cid: 887,
        name: "Methanol",
        iupac_name: "methanol",
        formula: "CH4O",
        weight: 32.042,
        structure_image: TINY_PNG_B64,
        synonyms: [],
        status: "resolved",
      },
      freq_input: 2,
      freq_candidate: 4,
      matched: true,
      shade: 2,
    },
    {
      entity: {
        key: "cid:241",
        cid: 241,
        name: "Benzene",
        iupac_name: "benzene",
        formula: "C6H6",
        weight: 78.114,
        structure_image: TINY_PNG_B64,
        synonyms: [],
        status: "resolved",
      },
      freq_input: 9,
      freq_candidate: 1,
      matched: true,
      shade: 1,
    },
  ],
};

/** One unresolved entity retained with a formula-tier key. */
export const UNRESOLVED_COMPARE: ComparePayload = {
  input: "doc-a",
  candidate: "doc-b",
  rows: [
    {
      entity: {
        key: "formula:Pt3W2",
        cid: null,
        name: "Pt3W2",
        iupac_name: null,
        formula: "Pt3W2",
        weight: 952.93,
        structure_image: null,
        synonyms: [],
        status: "unresolved",
      },
      freq_input: 2,
      freq_candidate: 1,
      matched: true,
      shade: 1,
    },
  ],
};

export const RECOMMENDATIONS: RecommendationsPayload = {
  input: "doc-input-0001",
  k: 3,
  w_entity: 0.5,
  w_text: 0.5,
  recommendations: [
    { id: "cand-aaa", score: 0.8123, entity_component: 0.9, text_component: 0.7246 },
    { id: "cand-bbb", score: 0.4417, entity_component: 0.5, text_component: 0.3834 },
    { id: "cand-ccc", score: 0.1002, entity_component: 0.0, text_component: 0.2004 },
  ],
};

export const EMPTY_RECOMMENDATIONS: RecommendationsPayload = {
  input: "doc-input-0001",
  k: 10,
  w_entity: 0.5,
  w_text: 0.5,
  recommendations: [],
};
