#pragma once

#include "fortress/alphabet.hpp"
#include "fortress/automaton.hpp"
#include "fortress/commands.hpp"
#include "fortress/errors.hpp"
#include "fortress/io.hpp"
#include "fortress/operations.hpp"
#include "fortress/report.hpp"
#include "fortress/supervisor.hpp"
#include "fortress/symbol.hpp"
#include "fortress/synthesis.hpp"
#include "fortress/verification.hpp"
