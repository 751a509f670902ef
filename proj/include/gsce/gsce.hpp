#pragma once

// Umbrella header. HTTP support lives in gsce/llm/http_agent.hpp and
// is not pulled in here, so offline users don't pay for httplib.

#include "gsce/corpus/generator.hpp"
#include "gsce/corpus/maneuver.hpp"
#include "gsce/corpus/task.hpp"
#include "gsce/dronesim/simulator.hpp"
#include "gsce/errors.hpp"
#include "gsce/eval/report.hpp"
#include "gsce/eval/scoring.hpp"
#include "gsce/llm/agent.hpp"
#include "gsce/llm/cache.hpp"
#include "gsce/llm/chat.hpp"
#include "gsce/prompt/composer.hpp"
#include "gsce/prompt/defaults.hpp"
#include "gsce/prompt/example_library.hpp"
#include "gsce/prompt/method_config.hpp"
#include "gsce/runner/extract.hpp"
#include "gsce/runner/runner.hpp"
#include "gsce/skillscript/ast.hpp"
#include "gsce/skillscript/host.hpp"
#include "gsce/skillscript/interpreter.hpp"
#include "gsce/skillscript/parser.hpp"
#include "gsce/skillscript/printer.hpp"
