#pragma once

#include "cyclotwist/arith.hpp"
#include "cyclotwist/curve.hpp"
#include "cyclotwist/cyclotomic.hpp"
#include "cyclotwist/dirichlet.hpp"
#include "cyclotwist/error.hpp"
#include "cyclotwist/lvalue.hpp"
#include "cyclotwist/rmt.hpp"
#include "cyclotwist/selfcheck.hpp"
#include "cyclotwist/survey.hpp"
