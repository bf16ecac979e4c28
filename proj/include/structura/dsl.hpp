#pragma once

#include "structura/dsl/lexer.hpp"
#include "structura/dsl/parser.hpp"
#include "structura/dsl/printer.hpp"
