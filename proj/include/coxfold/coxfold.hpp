#ifndef COXFOLD_COXFOLD_HPP
#define COXFOLD_COXFOLD_HPP

#include "coxfold/errors.hpp"
#include "coxfold/zsqrt2.hpp"
#include "coxfold/coxeter_system.hpp"
#include "coxfold/qseries.hpp"
#include "coxfold/enumeration.hpp"
#include "coxfold/folding.hpp"
#include "coxfold/closed_forms.hpp"
#include "coxfold/serialize.hpp"
#include "coxfold/verifier.hpp"
#include "coxfold/bruhat_dot.hpp"

#endif  // COXFOLD_COXFOLD_HPP
