/* copy.c -- core functions for copying files and directories
   Used by cp, mv and install. */

#include <config.h>
#include <stdio.h>
#include <sys/types.h>
#include <sys/stat.h>
#include <fcntl.h>
#include <unistd.h>

#include "system.h"
#include "backupfile.h"
#include "copy.h"

#define CHMOD_MODE_BITS (S_ISUID | S_ISGID | S_ISVTX | S_IRWXU | S_IRWXG | S_IRWXO)

struct dir_list
{
  struct dir_list *parent;
  ino_t ino;
  dev_t dev;
};

static int copy_internal (char const *src_name, char const *dst_name,
                          int new_dst, dev_t device,
                          struct dir_list *ancestors,
                          const struct cp_options *x,
                          int command_line_arg,
                          int *copy_into_self,
                          int *rename_succeeded);

/* Copy a regular file from SRC_NAME to DST_NAME.  Return nonzero on
   success.  The destination is truncated if it exists. */
static int
copy_reg (char const *src_name, char const *dst_name,
          const struct cp_options *x, mode_t dst_mode)
{
  char buf[BUFSIZ];
  ssize_t n_read;
  int source_desc;
  int dest_desc;
  int return_val = 1;
  struct stat src_open_sb;

  source_desc = open (src_name, O_RDONLY);
  if (source_desc < 0)
    {
      error (0, errno, _("cannot open %s for reading"), quote (src_name));
      return 0;
    }

  if (fstat (source_desc, &src_open_sb) != 0)
    {
      error (0, errno, _("cannot fstat %s"), quote (src_name));
      return_val = 0;
      goto close_src_desc;
    }

  dest_desc = open (dst_name, O_WRONLY | O_CREAT | O_TRUNC, dst_mode);
  if (dest_desc < 0)
    {
      error (0, errno, _("cannot create regular file %s"), quote (dst_name));
      return_val = 0;
      goto close_src_desc;
    }

  for (;;)
    {
      n_read = read (source_desc, buf, sizeof buf);
      if (n_read < 0)
        {
          error (0, errno, _("reading %s"), quote (src_name));
          return_val = 0;
          break;
        }
      if (n_read == 0)
        break;
      if (full_write (dest_desc, buf, n_read) != n_read)
        {
          error (0, errno, _("writing %s"), quote (dst_name));
          return_val = 0;
          break;
        }
    }

  if (close (dest_desc) < 0)
    {
      error (0, errno, _("closing %s"), quote (dst_name));
      return_val = 0;
    }
close_src_desc:
  if (close (source_desc) < 0)
    {
      error (0, errno, _("closing %s"), quote (src_name));
      return_val = 0;
    }
  return return_val;
}

/* Copy the directory SRC_NAME to DST_NAME, entry by entry. */
static int
copy_dir (char const *src_name_in, char const *dst_name_in, int new_dst,
          const struct stat *src_sb, struct dir_list *ancestors,
          const struct cp_options *x, int *copy_into_self)
{
  char *name_space;
  char *namep;
  int delayed_fail = 0;

  name_space = savedir (src_name_in);
  if (name_space == NULL)
    return 1;

  namep = name_space;
  while (*namep != '\0')
    {
      int local_copy_into_self;
      char *src_name = path_concat (src_name_in, namep, NULL);
      char *dst_name = path_concat (dst_name_in, namep, NULL);

      delayed_fail |= copy_internal (src_name, dst_name, new_dst, src_sb->st_dev,
                                     ancestors, x, 0, &local_copy_into_self, NULL);
      *copy_into_self |= local_copy_into_self;

      free (dst_name);
      free (src_name);
      namep += strlen (namep) + 1;
    }
  free (name_space);
  return delayed_fail;
}

/* Copy SRC_NAME to DST_NAME.  In move mode the source is renamed into
   place when both names live on the same file system; otherwise it is
   copied and the caller removes it. */
static int
copy_internal (char const *src_name, char const *dst_name,
               int new_dst, dev_t device,
               struct dir_list *ancestors,
               const struct cp_options *x,
               int command_line_arg,
               int *copy_into_self,
               int *rename_succeeded)
{
  struct stat src_sb;
  struct stat dst_sb;
  mode_t src_mode;
  char *dst_backup = NULL;
  int delayed_fail = 0;

  *copy_into_self = 0;

  if (lstat (src_name, &src_sb) != 0)
    {
      error (0, errno, _("cannot stat %s"), quote (src_name));
      return 1;
    }
  src_mode = src_sb.st_mode;

  if (!new_dst)
    {
      if (stat (dst_name, &dst_sb) != 0)
        {
          if (errno != ENOENT)
            {
              error (0, errno, _("cannot stat %s"), quote (dst_name));
              return 1;
            }
          new_dst = 1;
        }
      else if (x->backup_type != no_backups)
        {
          dst_backup = find_backup_file_name (dst_name, x->backup_type);
          if (link (dst_name, dst_backup) != 0 || unlink (dst_name) != 0)
            {
              error (0, errno, _("cannot backup %s"), quote (dst_name));
              free (dst_backup);
              return 1;
            }
          free (dst_backup);
          new_dst = 1;
        }
      else if (x->unlink_dest_before_opening || x->move_mode)
        {
          /* Remove the old destination so the rename below never has
             to replace an existing name. */
          if (unlink (dst_name) != 0 && errno != ENOENT)
            {
              error (0, errno, _("cannot remove %s"), quote (dst_name));
              return 1;
            }
          new_dst = 1;
        }
    }

  if (x->move_mode)
    {
      if (rename (src_name, dst_name) == 0)
        {
          if (rename_succeeded)
            *rename_succeeded = 1;
          return 0;
        }

      if (errno != EXDEV)
        {
          error (0, errno, _("cannot move %s to %s"),
                 quote_n (0, src_name), quote_n (1, dst_name));
          return 1;
        }
      /* Different file systems: fall through to copy, the caller
         removes the source afterwards. */
    }

  if (S_ISDIR (src_mode))
    {
      if (new_dst && mkdir (dst_name, get_dest_mode (x, src_mode)) != 0)
        {
          error (0, errno, _("cannot create directory %s"), quote (dst_name));
          return 1;
        }
      delayed_fail = copy_dir (src_name, dst_name, new_dst, &src_sb,
                               ancestors, x, copy_into_self);
    }
  else if (S_ISREG (src_mode))
    {
      if (! copy_reg (src_name, dst_name, x, get_dest_mode (x, src_mode)))
        delayed_fail = 1;
    }
  else
    {
      error (0, 0, _("%s has unknown file type"), quote (src_name));
      return 1;
    }

  if (x->preserve_timestamps)
    {
      struct timespec ts[2];
      ts[0] = get_stat_atime (&src_sb);
      ts[1] = get_stat_mtime (&src_sb);
      if (utimensat (AT_FDCWD, dst_name, ts, 0) != 0)
        {
          error (0, errno, _("preserving times for %s"), quote (dst_name));
          delayed_fail = 1;
        }
    }

  if (x->preserve_mode && chmod (dst_name, src_mode & CHMOD_MODE_BITS) != 0)
    {
      error (0, errno, _("setting permissions for %s"), quote (dst_name));
      delayed_fail = 1;
    }

  return delayed_fail;
}

/* Public entry point used by cp, mv and install. */
int
copy (char const *src_name, char const *dst_name,
      int nonexistent_dst, const struct cp_options *options,
      int *copy_into_self, int *rename_succeeded)
{
  return copy_internal (src_name, dst_name, nonexistent_dst, 0, NULL,
                        options, 1, copy_into_self, rename_succeeded);
}
