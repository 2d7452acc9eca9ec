#pragma once

#include "symcont/checker.hpp"
#include "symcont/combine.hpp"
#include "symcont/corpus.hpp"
#include "symcont/oracle.hpp"
#include "symcont/parser.hpp"
#include "symcont/theorems.hpp"
