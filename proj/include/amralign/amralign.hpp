#ifndef AMRALIGN_AMRALIGN_HPP
#define AMRALIGN_AMRALIGN_HPP

#include "amralign/alignment.hpp"
#include "amralign/amr2tree.hpp"
#include "amralign/config.hpp"
#include "amralign/features.hpp"
#include "amralign/hieralign.hpp"
#include "amralign/ibm1.hpp"
#include "amralign/metrics.hpp"
#include "amralign/model.hpp"
#include "amralign/penman.hpp"
#include "amralign/perceptron.hpp"
#include "amralign/pipeline.hpp"
#include "amralign/preprocess.hpp"
#include "amralign/symmetrize.hpp"
#include "amralign/treebank.hpp"
#include "amralign/types.hpp"
#include "amralign/util.hpp"

#endif  // AMRALIGN_AMRALIGN_HPP
