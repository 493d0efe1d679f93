#pragma once

// Umbrella header.

#include "hiprove/errors.hpp"
#include "hiprove/hiproof.hpp"
#include "hiprove/hiproof_json.hpp"
#include "hiprove/kernel.hpp"
#include "hiprove/recorder.hpp"
#include "hiprove/refactor.hpp"
#include "hiprove/script.hpp"
#include "hiprove/script_expr.hpp"
#include "hiprove/session.hpp"
#include "hiprove/tactics.hpp"
#include "hiprove/term.hpp"
#include "hiprove/term_syntax.hpp"
