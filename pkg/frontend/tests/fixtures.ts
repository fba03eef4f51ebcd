// Frozen responses captured from the live advice service for the
// cup 2R/3Y/1G, footprints 1R/0Y/1G reference state.
import type { AdviceResponse } from "../src/types";

export const FROZEN_ADVICE: Record<string, AdviceResponse> =
{
  "s1b0": {
    "verdict": "continue",
    "threshold": 4,
    "bust_probability": {
      "fraction": "19/72",
      "decimal": 0.2638888888888889
    },
    "expected_value_of_continuing": 1.061577,
    "rationale": "table-threshold",
    "state": {
      "cup": {
        "red": 2,
        "yellow": 3,
        "green": 1
      },
      "footprints": {
        "red": 1,
        "yellow": 0,
        "green": 1
      },
      "aside_brains": {
        "red": 0,
        "yellow": 0,
        "green": 4
      },
      "aside_shotguns": {
        "red": 0,
        "yellow": 1,
        "green": 0
      },
      "shotguns": 1,
      "brains_banked": 0,
      "asides_assumed": true
    }
  },
  "s1b4": {
    "verdict": "continue",
    "threshold": 4,
    "bust_probability": {
      "fraction": "19/72",
      "decimal": 0.2638888888888889
    },
    "expected_value_of_continuing": 0.006021,
    "rationale": "table-threshold",
    "state": {
      "cup": {
        "red": 2,
        "yellow": 3,
        "green": 1
      },
      "footprints": {
        "red": 1,
        "yellow": 0,
        "green": 1
      },
      "aside_brains": {
        "red": 0,
        "yellow": 0,
        "green": 4
      },
      "aside_shotguns": {
        "red": 0,
        "yellow": 1,
        "green": 0
      },
      "shotguns": 1,
      "brains_banked": 4,
      "asides_assumed": true
    }
  },
  "s1b5": {
    "verdict": "stop",
    "threshold": 4,
    "bust_probability": {
      "fraction": "19/72",
      "decimal": 0.2638888888888889
    },
    "expected_value_of_continuing": -0.257868,
    "rationale": "table-threshold",
    "state": {
      "cup": {
        "red": 2,
        "yellow": 3,
        "green": 1
      },
      "footprints": {
        "red": 1,
        "yellow": 0,
        "green": 1
      },
      "aside_brains": {
        "red": 0,
        "yellow": 0,
        "green": 4
      },
      "aside_shotguns": {
        "red": 0,
        "yellow": 1,
        "green": 0
      },
      "shotguns": 1,
      "brains_banked": 5,
      "asides_assumed": true
    }
  },
  "s2b0": {
    "verdict": "continue",
    "threshold": 0,
    "bust_probability": {
      "fraction": "317/432",
      "decimal": 0.7337962962962963
    },
    "expected_value_of_continuing": 0.131815,
    "rationale": "table-threshold",
    "state": {
      "cup": {
        "red": 2,
        "yellow": 3,
        "green": 1
      },
      "footprints": {
        "red": 1,
        "yellow": 0,
        "green": 1
      },
      "aside_brains": {
        "red": 0,
        "yellow": 0,
        "green": 3
      },
      "aside_shotguns": {
        "red": 0,
        "yellow": 1,
        "green": 1
      },
      "shotguns": 2,
      "brains_banked": 0,
      "asides_assumed": true
    }
  },
  "s2b4": {
    "verdict": "stop",
    "threshold": 0,
    "bust_probability": {
      "fraction": "317/432",
      "decimal": 0.7337962962962963
    },
    "expected_value_of_continuing": -2.80337,
    "rationale": "table-threshold",
    "state": {
      "cup": {
        "red": 2,
        "yellow": 3,
        "green": 1
      },
      "footprints": {
        "red": 1,
        "yellow": 0,
        "green": 1
      },
      "aside_brains": {
        "red": 0,
        "yellow": 0,
        "green": 3
      },
      "aside_shotguns": {
        "red": 0,
        "yellow": 1,
        "green": 1
      },
      "shotguns": 2,
      "brains_banked": 4,
      "asides_assumed": true
    }
  },
  "s2b5": {
    "verdict": "stop",
    "threshold": 0,
    "bust_probability": {
      "fraction": "317/432",
      "decimal": 0.7337962962962963
    },
    "expected_value_of_continuing": -3.537166,
    "rationale": "table-threshold",
    "state": {
      "cup": {
        "red": 2,
        "yellow": 3,
        "green": 1
      },
      "footprints": {
        "red": 1,
        "yellow": 0,
        "green": 1
      },
      "aside_brains": {
        "red": 0,
        "yellow": 0,
        "green": 3
      },
      "aside_shotguns": {
        "red": 0,
        "yellow": 1,
        "green": 1
      },
      "shotguns": 2,
      "brains_banked": 5,
      "asides_assumed": true
    }
  }
}
;
