#pragma once

#include "causal.hpp"
#include "epistemic.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "formula.hpp"
#include "fragment.hpp"
#include "model_io.hpp"
#include "signature.hpp"
#include "syntax.hpp"
#include "translate.hpp"
#include "proof.hpp"
#include "audit.hpp"
#include "session.hpp"
