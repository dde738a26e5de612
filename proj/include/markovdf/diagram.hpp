#pragma once

#include "markovdf/diagram/axioms.hpp"
#include "markovdf/diagram/evaluate.hpp"
#include "markovdf/diagram/normal_form.hpp"
#include "markovdf/diagram/parse.hpp"
#include "markovdf/diagram/term.hpp"
