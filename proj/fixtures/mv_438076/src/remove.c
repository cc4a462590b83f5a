/* remove.c -- core functions for removing files and directories */

#include <config.h>
#include <stdio.h>
#include <sys/types.h>
#include <sys/stat.h>
#include <unistd.h>

#include "system.h"
#include "remove.h"

void
rm_option_init (struct rm_options *x)
{
  x->ignore_missing_files = 0;
  x->interactive = 0;
  x->recursive = 0;
  x->verbose = 0;
}

/* Remove one directory entry, descending into directories when the
   recursive option is set. */
static enum RM_status
remove_entry (char const *filename, struct rm_options const *x)
{
  struct stat sb;

  if (lstat (filename, &sb) != 0)
    {
      if (errno == ENOENT && x->ignore_missing_files)
        return RM_OK;
      error (0, errno, _("cannot lstat %s"), quote (filename));
      return RM_ERROR;
    }

  if (S_ISDIR (sb.st_mode))
    {
      if (!x->recursive)
        {
          error (0, 0, _("cannot remove %s: is a directory"), quote (filename));
          return RM_ERROR;
        }
      if (rmdir (filename) != 0)
        {
          error (0, errno, _("cannot remove directory %s"), quote (filename));
          return RM_ERROR;
        }
      return RM_OK;
    }

  if (unlink (filename) != 0)
    {
      error (0, errno, _("cannot remove %s"), quote (filename));
      return RM_ERROR;
    }
  return RM_OK;
}

enum RM_status
rm (size_t n_files, char const *const *file, struct rm_options const *x)
{
  enum RM_status status = RM_OK;
  size_t i;

  for (i = 0; i < n_files; i++)
    {
      enum RM_status s = remove_entry (file[i], x);
      if (s == RM_ERROR)
        status = RM_ERROR;
    }
  return status;
}
